#include "stochmatch/scan.hpp"

#include "stochmatch/format.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <ostream>
#include <thread>

namespace stochmatch {

ChainReport empty_chain_report(std::string id) {
    ChainReport r;
    r.id = std::move(id);
    for (std::size_t i = 0; i < kRelationCount; ++i) r.relations[i] = {kRelationNames[i], relation_kind(i), 0.0};
    return r;
}

ScanResult scan(std::span<const Instance> instances, const SizeLimits& limits, unsigned threads) {
    const auto started = std::chrono::steady_clock::now();
    ScanResult result;
    result.reports.resize(instances.size());
    std::vector<std::exception_ptr> errors(instances.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            try {
                const std::string id = std::to_string(i);
                result.reports[i] = instances[i].edges.empty() ? empty_chain_report(id)
                                                               : check_chain(instances[i], limits, id);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, instances.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
        work();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    ScanSummary& s = result.summary;
    s.checked = instances.size();
    bool have_worst = false;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const ChainReport& r = result.reports[i];
        if (!r.passed()) s.failure_ids.push_back(r.id);
        if (!have_worst || r.ratio() > s.worst_ratio) {
            have_worst = true;
            s.worst_ratio = r.ratio();
            s.worst_id = r.id;
            s.worst_instance = to_text(instances[i]);
        }
    }
    s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

void write_scan_csv(std::ostream& out, std::span<const ChainReport> reports) {
    out << chain_csv_header() << '\n';
    for (const ChainReport& r : reports) out << chain_csv_row(r) << '\n';
}

void write_summary(std::ostream& out, const ScanSummary& s) {
    out << "instances " << s.checked << '\n' << "failures " << s.failure_ids.size() << '\n';
    out << "failed_ids";
    for (const std::string& id : s.failure_ids) out << ' ' << id;
    out << '\n';
    out << "worst_ratio " << report_decimal(s.worst_ratio) << '\n';
    if (!s.worst_id.empty()) {
        out << "worst_id " << s.worst_id << '\n' << "worst_instance\n" << s.worst_instance;
    }
}

}  // namespace stochmatch
