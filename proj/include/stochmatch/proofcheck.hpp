#ifndef STOCHMATCH_PROOFCHECK_HPP
#define STOCHMATCH_PROOFCHECK_HPP

#include "stochmatch/events.hpp"
#include "stochmatch/policy.hpp"
#include "stochmatch/solver.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stochmatch {

inline constexpr double kChainTolerance = 1e-9;

/// OPT with every probe of the distinguished edge followed by the success
/// subtree whatever the outcome. Stored as reach probabilities over the
/// nodes of the underlying optimal tree.
struct OptPrime {
    EdgeId edge = 0;
    double value = 0.0;
    std::vector<double> reach;   // reach probability under OPT'
    std::vector<bool> in_x;      // node probes the distinguished edge
};

OptPrime transform_optprime(const DecisionTree& opt, EdgeId ab);

/// Walks OPT' scoring nothing for probes that touch alpha or beta.
double value_algL(const DecisionTree& opt, const OptPrime& prime, Vertex alpha, Vertex beta);

/// P(probe ab) p_ab + P(!probe ab) (P(take a | !probe ab) + P(take b | !probe ab)).
double residual_RL(std::span<const LeafPath> paths, const Instance& inst, EdgeId ab);
double residual_RL(const DecisionTree& opt, EdgeId ab);

/// Walks OPT while tracking the state of the follower on the instance where
/// ab failed (ab removed, one unit of patience less at both endpoints).
/// Probes the follower cannot make score nothing and branch like OPT.
double value_algR(const Instance& inst, const DecisionTree& opt, EdgeId ab);

/// As residual_RL, with "takes x in its t_x-th probe" in place of "takes x".
double residual_RR(std::span<const LeafPath> paths, const Instance& inst, EdgeId ab, int t_alpha,
                   int t_beta);
double residual_RR(const DecisionTree& opt, EdgeId ab, int t_alpha, int t_beta);

struct KeyLemmaResult {
    Vertex vertex = 0;
    /// False when P(!probe ab) is zero; every term is then reported as 0.
    bool defined = true;
    double lhs = 0.0;            // (1-p)/p * P(take x in t_x | !probe ab)
    double rhs = 0.0;            // P(t_x-th probe of x fails | !probe ab)
    double rhs_corollary = 0.0;  // P(x not taken | !probe ab)

    double slack() const noexcept { return rhs - lhs; }
    double slack_corollary() const noexcept { return rhs_corollary - lhs; }
    bool lemma_holds() const noexcept { return slack() >= -kChainTolerance; }
    bool corollary_holds() const noexcept { return slack_corollary() >= -kChainTolerance; }
};

/// Throws ContractViolation unless p_ab is the largest probability in the
/// tree's instance.
KeyLemmaResult check_key_lemma(std::span<const LeafPath> paths, const Instance& inst, EdgeId ab,
                               Vertex gamma, int t_gamma, double p_ab);
KeyLemmaResult check_key_lemma(const DecisionTree& opt, EdgeId ab, Vertex gamma, int t_gamma,
                               double p_ab);

enum class RelationKind { Inequality, Equality };

struct Relation {
    const char* name;
    RelationKind kind;
    double slack;

    bool passed() const noexcept;
};

/// Relations, in report order.
enum RelationIndex : std::size_t {
    kOptPrimeBound,    // E OPT <= E OPT' + (1-p) P(probe ab)
    kOptPrimeSplit,    // E OPT' = E ALG_L + E R_L
    kOptSplitRight,    // E OPT = E ALG_R + E R_R
    kLeftBound,        // E OPT <= E ALG_L + P(probe) + P(!probe)(P(take a|.) + P(take b|.))
    kBaseInequality,   // p-weighted combination of the two previous bounds
    kKeyLemma,         // key lemma and corollary for both endpoints
    kCombinedBound,    // E OPT <= p E ALG_L + (1-p) E ALG_R + 2p
    kInduction,        // E ALG_L <= E OPT(G^L), E ALG_R <= E OPT(G^R)
    kFinalBound,       // E OPT <= 2 E GRD
    kRelationCount
};

inline constexpr std::array<const char*, kRelationCount> kRelationNames = {
    "optp", "optl", "optr", "algl", "baseineq", "keylemma", "combined", "induction", "final"};

constexpr RelationKind relation_kind(std::size_t i) noexcept {
    return i == kOptPrimeSplit || i == kOptSplitRight ? RelationKind::Equality : RelationKind::Inequality;
}

struct ChainReport {
    std::string id;
    EdgeId ab = 0;
    Vertex alpha = 0;
    Vertex beta = 0;
    double p_ab = 0.0;

    double e_opt = 0.0;
    double e_grd = 0.0;
    double e_grd_left = 0.0;   // greedy after ab succeeds
    double e_grd_right = 0.0;  // greedy after ab fails
    double e_optprime = 0.0;
    double e_algL = 0.0;
    double e_RL = 0.0;
    double e_algR = 0.0;
    double e_RR = 0.0;
    double e_opt_left = 0.0;   // OPT(G^L), solved afresh on the reduced instance
    double e_opt_right = 0.0;  // OPT(G^R)

    double p_probe = 0.0;
    // Conditionals on !probe ab; nullopt when that event has probability 0.
    std::optional<double> take_alpha;
    std::optional<double> take_beta;
    std::optional<double> take_alpha_last;  // takes alpha in its t_alpha-th probe
    std::optional<double> take_beta_last;

    KeyLemmaResult key_alpha;
    KeyLemmaResult key_beta;
    SubtreeBoundReport subtree_bound;

    std::array<Relation, kRelationCount> relations{};

    double ratio() const noexcept;
    bool passed() const noexcept;
};

/// Runs the whole chain for greedy's first edge. Throws ContractViolation on
/// an instance without edges.
ChainReport check_chain(const Instance& inst, const SizeLimits& limits = {}, std::string id = "");

/// CSV header and row; see README for the column meanings.
std::string chain_csv_header();
std::string chain_csv_row(const ChainReport& r);

}  // namespace stochmatch

#endif  // STOCHMATCH_PROOFCHECK_HPP
