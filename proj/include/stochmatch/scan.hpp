#ifndef STOCHMATCH_SCAN_HPP
#define STOCHMATCH_SCAN_HPP

#include "stochmatch/proofcheck.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace stochmatch {

struct ScanSummary {
    std::size_t checked = 0;
    std::vector<std::string> failure_ids;
    double worst_ratio = 1.0;
    std::string worst_id;
    std::string worst_instance;  // instance file text, for replay
    double wall_seconds = 0.0;
};

struct ScanResult {
    std::vector<ChainReport> reports;  // in input order
    ScanSummary summary;
};

/// Report for an instance without edges: every quantity is zero, so every
/// relation holds with zero slack.
ChainReport empty_chain_report(std::string id);

/// Runs check_chain on every instance, ids "0", "1", ... Uses up to
/// `threads` workers (0 picks the hardware concurrency); the result does
/// not depend on the worker count.
ScanResult scan(std::span<const Instance> instances, const SizeLimits& limits = {}, unsigned threads = 0);

void write_scan_csv(std::ostream& out, std::span<const ChainReport> reports);

/// Deterministic part of the summary (wall time excluded).
void write_summary(std::ostream& out, const ScanSummary& s);

}  // namespace stochmatch

#endif  // STOCHMATCH_SCAN_HPP
