#include "qpn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "qpn/propagation.hpp"

namespace qpn {

namespace {

constexpr std::size_t kSynergyAttempts = 2000;
constexpr double kTolerance = 1e-12;
constexpr double kLow = 0.02;
constexpr double kHigh = 0.98;

void require_budget(const Network& net) {
  if (net.size() > kMaxOracleNodes) {
    throw BudgetError("network has " + std::to_string(net.size()) +
                      " nodes; the oracle enumerates at most " +
                      std::to_string(kMaxOracleNodes));
  }
}

std::size_t position(const std::vector<NodeIndex>& parents, NodeIndex p) {
  const auto it = std::find(parents.begin(), parents.end(), p);
  if (it == parents.end()) throw InternalError("not a parent");
  return static_cast<std::size_t>(it - parents.begin());
}

std::vector<Sign> parent_signs(const Network& net, NodeIndex v,
                               const std::vector<NodeIndex>& parents) {
  std::vector<Sign> out;
  for (NodeIndex p : parents) out.push_back(*net.arc_sign(p, v));
  return out;
}

std::string synergy_name(const Network& net, const ProductSynergy& s) {
  return "synergy " + net.label(s.first) + "," + net.label(s.second) + " on " +
         net.label(s.child) + "=" + (s.child_value ? "true" : "false") + " (" +
         std::string(glyph(s.sign)) + ")";
}

// Returns an empty string when the table honours the synergy in every context of the
// child's other parents, otherwise a description of the first failing context.
std::string synergy_failure(const Network& net, const std::vector<NodeIndex>& parents,
                            const std::vector<double>& table, const ProductSynergy& s) {
  if (s.sign == Sign::ambiguous) return {};
  const std::size_t a = std::size_t{1} << position(parents, s.first);
  const std::size_t b = std::size_t{1} << position(parents, s.second);
  const auto p = [&](std::size_t k) { return s.child_value ? table[k] : 1.0 - table[k]; };
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (k & (a | b)) continue;
    const double d = p(k | a | b) * p(k) - p(k | a) * p(k | b);
    const bool fine = (s.sign == Sign::plus && d >= -kTolerance) ||
                      (s.sign == Sign::minus && d <= kTolerance) ||
                      (s.sign == Sign::zero && std::abs(d) <= kTolerance);
    if (!fine) {
      return synergy_name(net, s) + " fails in parent context " + std::to_string(k) +
             " (difference " + std::to_string(d) + ")";
    }
  }
  return {};
}

class TableSampler {
 public:
  explicit TableSampler(std::uint64_t seed) : rng_(seed) {}

  // Uniform draws made monotone by compare-exchange: along every '+' or '-' parent,
  // each pair of rows differing only in that parent is put in the required order, and
  // passes repeat until nothing moves. '0' parents share one draw per configuration of
  // the remaining parents; '?' parents are left alone.
  std::vector<double> monotone(const std::vector<Sign>& signs) {
    const std::size_t rows = std::size_t{1} << signs.size();
    std::size_t ignored = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (signs[i] == Sign::zero) ignored |= std::size_t{1} << i;
    }
    std::uniform_real_distribution<double> uniform(kLow, kHigh);
    std::vector<double> out(rows);
    for (std::size_t x = 0; x < rows; ++x) {
      out[x] = (x & ignored) ? out[x & ~ignored] : uniform(rng_);
    }
    for (bool moved = true; moved;) {
      moved = false;
      for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != Sign::plus && signs[i] != Sign::minus) continue;
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t x = 0; x < rows; ++x) {
          if (x & bit) continue;
          double& lo = signs[i] == Sign::plus ? out[x] : out[x | bit];
          double& hi = signs[i] == Sign::plus ? out[x | bit] : out[x];
          if (lo > hi) {
            std::swap(lo, hi);
            moved = true;
          }
        }
      }
    }
    return out;
  }

  // P(child = value | x) = base * prod_i r_i^{x_i}: every pairwise synergy for `value`
  // is exactly zero.
  std::vector<double> product_form(const std::vector<Sign>& signs, bool value) {
    std::vector<double> ratio;
    double largest = 1.0;
    for (Sign s : signs) {
      const Sign effective = value ? s : Sign::minus * s;
      double r = 1.0;
      switch (effective) {
        case Sign::plus:
          r = std::uniform_real_distribution<double>(1.0, 1.8)(rng_);
          break;
        case Sign::minus:
          r = std::uniform_real_distribution<double>(0.4, 1.0)(rng_);
          break;
        case Sign::ambiguous:
          r = std::uniform_real_distribution<double>(0.4, 1.8)(rng_);
          break;
        case Sign::zero:
          break;
      }
      ratio.push_back(r);
      largest *= std::max(1.0, r);
    }
    const double base = std::uniform_real_distribution<double>(kLow, kHigh)(rng_) / largest;
    std::vector<double> out(std::size_t{1} << signs.size());
    for (std::size_t x = 0; x < out.size(); ++x) {
      double q = base;
      for (std::size_t i = 0; i < signs.size(); ++i) {
        if (x >> i & 1U) q *= ratio[i];
      }
      out[x] = value ? q : 1.0 - q;
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

Quantification quantify(const Network& net, std::uint64_t seed) {
  require_budget(net);
  TableSampler sampler(seed);
  Quantification q;
  q.p_true.resize(net.size());
  for (NodeIndex v = 0; v < net.size(); ++v) {
    const auto parents = net.parents(v);
    const auto signs = parent_signs(net, v, parents);
    std::vector<const ProductSynergy*> synergies;
    const ProductSynergy* zero = nullptr;
    for (const auto& s : net.synergies()) {
      if (s.child != v) continue;
      synergies.push_back(&s);
      if (s.sign == Sign::zero && zero == nullptr) zero = &s;
    }
    std::string failure;
    for (std::size_t attempt = 0; attempt < kSynergyAttempts; ++attempt) {
      q.p_true[v] =
          zero ? sampler.product_form(signs, zero->child_value) : sampler.monotone(signs);
      failure.clear();
      for (const auto* s : synergies) {
        failure = synergy_failure(net, parents, q.p_true[v], *s);
        if (!failure.empty()) break;
      }
      if (failure.empty()) break;
    }
    if (!failure.empty()) {
      throw InputError("cannot quantify " + net.label(v) + " after " +
                       std::to_string(kSynergyAttempts) + " draws: " + failure);
    }
  }
  return q;
}

std::vector<std::string> check_quantification(const Network& net, const Quantification& q) {
  std::vector<std::string> out;
  if (q.p_true.size() != net.size()) return {"table count does not match the network"};
  for (NodeIndex v = 0; v < net.size(); ++v) {
    const auto parents = net.parents(v);
    const auto& table = q.p_true[v];
    if (table.size() != std::size_t{1} << parents.size()) {
      out.push_back("table of " + net.label(v) + " has the wrong number of rows");
      continue;
    }
    for (double p : table) {
      if (!(p >= 0.0 && p <= 1.0)) {
        out.push_back("row of " + net.label(v) + " is not a distribution");
        break;
      }
    }
    for (std::size_t i = 0; i < parents.size(); ++i) {
      const Sign s = *net.arc_sign(parents[i], v);
      const std::size_t bit = std::size_t{1} << i;
      for (std::size_t k = 0; k < table.size(); ++k) {
        if (k & bit) continue;
        const double d = table[k | bit] - table[k];
        const bool fine = (s == Sign::plus && d >= -kTolerance) ||
                          (s == Sign::minus && d <= kTolerance) ||
                          (s == Sign::zero && std::abs(d) <= kTolerance) ||
                          s == Sign::ambiguous;
        if (!fine) {
          out.push_back("influence " + net.label(parents[i]) + "->" + net.label(v) + " (" +
                        std::string(glyph(s)) + ") fails in parent context " +
                        std::to_string(k));
          break;
        }
      }
    }
  }
  for (const auto& s : net.synergies()) {
    const std::string f = synergy_failure(net, net.parents(s.child), q.p_true[s.child], s);
    if (!f.empty()) out.push_back(f);
  }
  return out;
}

JointDistribution::JointDistribution(const Network& net, const Quantification& q)
    : n_(net.size()) {
  require_budget(net);
  if (q.p_true.size() != n_) throw InputError("quantification does not match the network");
  std::vector<std::vector<NodeIndex>> parents(n_);
  for (NodeIndex v = 0; v < n_; ++v) parents[v] = net.parents(v);
  joint_.assign(std::size_t{1} << n_, 1.0);
  for (std::size_t world = 0; world < joint_.size(); ++world) {
    double p = 1.0;
    for (NodeIndex v = 0; v < n_; ++v) {
      std::size_t row = 0;
      for (std::size_t i = 0; i < parents[v].size(); ++i) {
        if (world >> parents[v][i] & 1U) row |= std::size_t{1} << i;
      }
      const double t = q.p_true[v].at(row);
      p *= (world >> v & 1U) ? t : 1.0 - t;
    }
    joint_[world] = p;
  }
}

double JointDistribution::probability(std::span<const Observation> evidence) const {
  std::size_t care = 0;
  std::size_t want = 0;
  for (const auto& o : evidence) {
    if (o.node >= n_) throw InputError("evidence names a node outside the network");
    const std::size_t bit = std::size_t{1} << o.node;
    if ((care & bit) && static_cast<bool>(want & bit) != o.value) return 0.0;
    care |= bit;
    if (o.value) want |= bit;
  }
  double total = 0.0;
  for (std::size_t world = 0; world < joint_.size(); ++world) {
    if ((world & care) == want) total += joint_[world];
  }
  return total;
}

double JointDistribution::posterior(std::span<const Observation> evidence,
                                    NodeIndex target) const {
  if (target >= n_) throw InputError("target is not in the network");
  const double pe = probability(evidence);
  if (pe <= 0.0) throw InputError("evidence has probability zero");
  std::vector<Observation> with(evidence.begin(), evidence.end());
  with.push_back({target, true});
  return probability(with) / pe;
}

double exact_posterior(const Network& net, const Quantification& q,
                       std::span<const Observation> evidence, NodeIndex target) {
  return JointDistribution(net, q).posterior(evidence, target);
}

Sign direction_of(double before, double after, double epsilon) {
  if (after > before + epsilon) return Sign::plus;
  if (after < before - epsilon) return Sign::minus;
  return Sign::zero;
}

std::vector<PosteriorDelta> posterior_deltas(const Network& net, const Quantification& q,
                                             const Query& query) {
  check_query(net, query);
  const JointDistribution joint(net, q);
  const auto all = all_observations(query);
  std::vector<PosteriorDelta> out;
  for (NodeIndex v = 0; v < net.size(); ++v) {
    const double before = joint.posterior(query.observed, v);
    const double after = joint.posterior(all, v);
    out.push_back({v, before, after, direction_of(before, after)});
  }
  return out;
}

bool admits(Sign propagated, Sign direction) noexcept {
  switch (propagated) {
    case Sign::ambiguous:
      return true;
    case Sign::zero:
      return direction == Sign::zero;
    case Sign::plus:
    case Sign::minus:
      return direction == propagated || direction == Sign::zero;
  }
  return false;
}

SoundnessReport check_soundness(const Network& net, const Query& query, std::size_t trials,
                                std::uint64_t seed) {
  return check_soundness(net, net, query, trials, seed);
}

SoundnessReport check_soundness(const Network& net, const Network& reference,
                                const Query& query, std::size_t trials, std::uint64_t seed) {
  require_budget(net);
  require_budget(reference);
  if (reference.size() != net.size()) {
    throw InputError("reference network must have the same nodes");
  }
  std::vector<NodeIndex> to_net(reference.size());
  for (NodeIndex v = 0; v < reference.size(); ++v) {
    const auto found = net.find(reference.label(v));
    if (!found) {
      throw InputError("reference node '" + reference.label(v) + "' is not in the network");
    }
    to_net[v] = *found;
  }
  const SignMap signs = propagate(net, query).signs;
  const Query ref_query = remap_query(net, reference, query);
  SoundnessReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = seed + t;
    Quantification q;
    try {
      q = quantify(reference, trial_seed);
    } catch (const BudgetError&) {
      throw;
    } catch (const InputError& e) {
      ++report.skipped;
      report.skip_reasons.push_back("seed " + std::to_string(trial_seed) + ": " + e.what());
      continue;
    }
    auto deltas = posterior_deltas(reference, q, ref_query);
    std::sort(deltas.begin(), deltas.end(), [&](const auto& a, const auto& b) {
      return to_net[a.node] < to_net[b.node];
    });
    for (const auto& d : deltas) {
      const NodeIndex v = to_net[d.node];
      const bool ok = admits(signs[v], d.direction);
      if (!ok) ++report.counterexamples;
      report.lines.push_back({trial_seed, net.label(v), signs[v], d.direction, ok});
    }
  }
  return report;
}

void write_soundness_report(std::ostream& os, const SoundnessReport& report) {
  os << "seed, node, propagated, direction, verdict\n";
  for (const auto& l : report.lines) {
    os << l.seed << ", " << l.node << ", " << l.propagated << ", " << l.direction << ", "
       << (l.ok ? "ok" : "counterexample") << '\n';
  }
  for (const auto& r : report.skip_reasons) os << "skipped " << r << '\n';
  os << "trials: " << report.trials << ", skipped: " << report.skipped
     << ", counterexamples: " << report.counterexamples << '\n';
}

SeveredModel sever_arc(const Network& net, const Quantification& q, NodeIndex tail,
                       NodeIndex head, std::span<const Observation> context) {
  if (!net.arc_sign(tail, head)) {
    throw InputError("no arc " + net.label(tail) + "->" + net.label(head));
  }
  const double p_tail = JointDistribution(net, q).posterior(context, tail);

  SeveredModel out;
  for (const auto& l : net.labels()) out.network.add_node(l);
  for (const auto& a : net.arcs()) {
    if (a.tail != tail || a.head != head) out.network.add_arc(a.tail, a.head, a.sign);
  }
  for (const auto& s : net.synergies()) {
    if (s.child == head && (s.first == tail || s.second == tail)) continue;
    out.network.add_synergy(s);
  }

  out.quantification = q;
  const auto old_parents = net.parents(head);
  const std::size_t cut = position(old_parents, tail);
  const std::size_t low = (std::size_t{1} << cut) - 1;
  auto& table = out.quantification.p_true[head];
  std::vector<double> merged(q.p_true[head].size() / 2);
  for (std::size_t k = 0; k < merged.size(); ++k) {
    const std::size_t without = (k & low) | ((k & ~low) << 1);
    const std::size_t with = without | (std::size_t{1} << cut);
    merged[k] = p_tail * q.p_true[head][with] + (1.0 - p_tail) * q.p_true[head][without];
  }
  table = std::move(merged);
  return out;
}

}  // namespace qpn
