#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qpn/network.hpp"

namespace qpn {

inline constexpr std::size_t kMaxOracleNodes = 12;
inline constexpr double kDirectionEpsilon = 1e-9;

// Raised when a network is too large for joint enumeration.
class BudgetError : public InputError {
 public:
  using InputError::InputError;
};

// Numeric CPTs for a network of binary variables. p_true[v][k] is P(v = true | parent
// configuration k), where bit i of k is the value of the i-th parent of v in label order
// (Network::parents).
struct Quantification {
  std::vector<std::vector<double>> p_true;
};

// Draws tables consistent with every arc sign and product synergy, deterministically per
// seed. Rows start as uniform draws in [0.02, 0.98] and are swapped pairwise until they
// are monotone in every signed parent; '0' parents are ignored by the table. A node
// carrying a zero synergy gets a product-form table instead. Tables violating a '+' or
// '-' synergy are redrawn; throws InputError naming the synergy if no draw satisfies it.
Quantification quantify(const Network& net, std::uint64_t seed);

// Empty iff `q` satisfies the row-sum, influence-sign and synergy-sign constraints.
std::vector<std::string> check_quantification(const Network& net, const Quantification& q);

// Full joint distribution by enumeration.
class JointDistribution {
 public:
  JointDistribution(const Network& net, const Quantification& q);

  // P(evidence).
  [[nodiscard]] double probability(std::span<const Observation> evidence) const;
  // P(target = true | evidence); throws InputError when P(evidence) is 0.
  [[nodiscard]] double posterior(std::span<const Observation> evidence, NodeIndex target) const;

 private:
  std::size_t n_;
  std::vector<double> joint_;  // bit v of the index is the value of node v
};

double exact_posterior(const Network& net, const Quantification& q,
                       std::span<const Observation> evidence, NodeIndex target);

struct PosteriorDelta {
  NodeIndex node;
  double before;  // given the previous observations
  double after;   // given the previous observations and the evidence
  Sign direction;
};

Sign direction_of(double before, double after, double epsilon = kDirectionEpsilon);

// Shift of every node's probability when the evidence of `query` is added.
std::vector<PosteriorDelta> posterior_deltas(const Network& net, const Quantification& q,
                                             const Query& query);

// Whether a qualitative sign admits a numeric direction: '+' admits '+' and '0', '-'
// admits '-' and '0', '0' requires '0', '?' admits anything.
bool admits(Sign propagated, Sign direction) noexcept;

struct SoundnessLine {
  std::uint64_t seed;
  std::string node;
  Sign propagated;
  Sign direction;
  bool ok;
};

struct SoundnessReport {
  std::size_t trials = 0;
  std::size_t skipped = 0;
  std::vector<std::string> skip_reasons;
  std::vector<SoundnessLine> lines;
  std::size_t counterexamples = 0;
};

// Trial t uses seed + t. Propagation soundness relies on the previous observations
// opening no head-to-head node other than through a recorded synergy.
SoundnessReport check_soundness(const Network& net, const Query& query, std::size_t trials,
                                std::uint64_t seed);

// As above, but the numbers are drawn from `reference`, a network over the same labels,
// and the signs propagated on `net` are judged against them. With a reference whose
// signs differ from `net` this is a mutation test of `net`.
SoundnessReport check_soundness(const Network& net, const Network& reference,
                                const Query& query, std::size_t trials, std::uint64_t seed);

// "seed, node, propagated, direction, verdict" per line, then summary counts.
void write_soundness_report(std::ostream& os, const SoundnessReport& report);

// The network with arc tail->head removed and `head` fed instead by an independent copy
// of `tail` distributed as P(tail | context). Any influence of the evidence that used
// the arc is cut while every other path keeps its numbers.
struct SeveredModel {
  Network network;
  Quantification quantification;
};
SeveredModel sever_arc(const Network& net, const Quantification& q, NodeIndex tail,
                       NodeIndex head, std::span<const Observation> context);

}  // namespace qpn
