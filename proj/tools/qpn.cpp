// qpn: command-line front end.
//
//   qpn propagate --network net.json --evidence H=true [--observe X=false ...] [--trace]
//   qpn explain   --network net.json --evidence H=true --interest A [--depth 1]
//   qpn relevant  --network net.json --evidence H=true --interest A
//   qpn check     --network net.json --evidence H=true [--trials 100] [--seed 1]
//                 [--reference truth.json]
//
// Exit status: 0 on success, 1 for "nothing to explain", a disconnected query or an
// oracle counterexample, 2 for usage, input and budget errors, 3 for internal errors.

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpn/io.hpp"
#include "qpn/oracle.hpp"
#include "qpn/pivotal.hpp"
#include "qpn/propagation.hpp"
#include "qpn/relevance.hpp"
#include "qpn/report.hpp"

namespace {

using nlohmann::json;
using namespace qpn;

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct RunConfig {
  std::string network;
  std::vector<std::string> observe;
  std::string evidence;
  std::string interest;
  std::string format = "text";
  bool trace = false;
  int depth = kDefaultRecursionDepth;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string reference;
};

Observation parse_assignment(const Network& net, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw InputError("expected NODE=true|false, got \"" + text + "\"");
  const std::string value = text.substr(eq + 1);
  if (value != "true" && value != "false") {
    throw InputError("value of " + text.substr(0, eq) + " must be true or false");
  }
  return {net.index(text.substr(0, eq)), value == "true"};
}

Query build_query(const Network& net, const RunConfig& cfg, bool need_interest) {
  if (cfg.evidence.empty()) throw InputError("--evidence is required");
  Query q;
  for (const auto& o : cfg.observe) q.observed.push_back(parse_assignment(net, o));
  q.evidence = parse_assignment(net, cfg.evidence);
  if (need_interest) {
    if (cfg.interest.empty()) throw InputError("--interest is required");
    q.interest = net.index(cfg.interest);
  } else {
    // propagate and check do not use the node of interest; pick any node that keeps the
    // query well formed.
    q.interest = q.evidence.node;
    for (NodeIndex v = 0; v < net.size(); ++v) {
      const bool taken =
          v == q.evidence.node ||
          std::any_of(q.observed.begin(), q.observed.end(), [&](auto& o) { return o.node == v; });
      if (!taken) {
        q.interest = v;
        break;
      }
    }
    if (!cfg.interest.empty()) q.interest = net.index(cfg.interest);
  }
  check_query(net, q);
  return q;
}

bool structured(const RunConfig& cfg) { return cfg.format == "structured"; }

int cmd_propagate(const RunConfig& cfg) {
  const Network net = load_network(cfg.network);
  const Query q = build_query(net, cfg, false);
  const auto result = propagate(net, q);
  if (structured(cfg)) {
    json out;
    out["signs"] = json::array();
    for (NodeIndex v = 0; v < net.size(); ++v) {
      out["signs"].push_back(
          {{"node", net.label(v)}, {"sign", std::string(glyph(result.signs[v]))}});
    }
    if (cfg.trace) {
      out["trace"] = json::array();
      for (const auto& m : result.trace.messages) {
        out["trace"].push_back({{"from", net.label(m.from)},
                                {"to", net.label(m.to)},
                                {"sign", std::string(glyph(m.sign))}});
      }
    }
    std::cout << out.dump(2) << '\n';
    return kOk;
  }
  for (NodeIndex v = 0; v < net.size(); ++v) {
    std::cout << net.label(v) << ' ' << result.signs[v] << '\n';
  }
  if (cfg.trace) {
    std::cout << "trace:\n";
    write_trace(std::cout, net, result.trace);
  }
  return kOk;
}

int cmd_explain(const RunConfig& cfg) {
  if (cfg.depth < 0) throw InputError("--depth must not be negative");
  const Network net = load_network(cfg.network);
  const Query q = build_query(net, cfg, true);
  const auto result = pivotal_pruning(net, q, cfg.depth);
  if (result.outcome == PivotalOutcome::no_ambiguity) {
    if (structured(cfg)) {
      std::cout << json{{"outcome", "no_ambiguity"},
                        {"interest", net.label(q.interest)},
                        {"sign", std::string(glyph(result.interest_sign))}}
                       .dump(2)
                << '\n';
    } else {
      std::cout << "no ambiguity: sign[" << net.label(q.interest)
                << "] = " << result.interest_sign << '\n';
    }
    return kDomain;
  }
  if (structured(cfg)) {
    std::cout << json{{"outcome", "explained"},
                      {"explanation", json::parse(explanation_json(*result.explanation))}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << explanation_text(*result.explanation);
  }
  return kOk;
}

int cmd_relevant(const RunConfig& cfg) {
  const Network net = load_network(cfg.network);
  const Query q = build_query(net, cfg, true);
  const auto rel = relevant_network(net, q);
  const bool ok = rel.outcome == RelevanceOutcome::ok;
  if (structured(cfg)) {
    std::cout << json{{"outcome", ok ? "ok" : "disconnected"},
                      {"network", json::parse(network_to_json(rel.network))}}
                     .dump(2)
              << '\n';
  } else if (ok) {
    std::cout << network_to_json(rel.network);
  } else {
    std::cerr << "empty relevant network: no unblocked chain from " << net.label(q.evidence.node)
              << " to " << net.label(q.interest) << '\n';
  }
  return ok ? kOk : kDomain;
}

int cmd_check(const RunConfig& cfg) {
  const Network net = load_network(cfg.network);
  const Query q = build_query(net, cfg, false);
  const auto report = cfg.reference.empty()
                          ? check_soundness(net, q, cfg.trials, cfg.seed)
                          : check_soundness(net, load_network(cfg.reference), q, cfg.trials,
                                            cfg.seed);
  if (structured(cfg)) {
    json out{{"trials", report.trials},
             {"skipped", report.skipped},
             {"skip_reasons", report.skip_reasons},
             {"counterexamples", report.counterexamples},
             {"lines", json::array()}};
    for (const auto& l : report.lines) {
      out["lines"].push_back({{"seed", l.seed},
                              {"node", l.node},
                              {"propagated", std::string(glyph(l.propagated))},
                              {"direction", std::string(glyph(l.direction))},
                              {"verdict", l.ok ? "ok" : "counterexample"}});
    }
    std::cout << out.dump(2) << '\n';
  } else {
    write_soundness_report(std::cout, report);
  }
  return report.counterexamples == 0 ? kOk : kDomain;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool interest_required) {
  sub->add_option("--network", cfg.network, "Network file (JSON)")->required();
  sub->add_option("--observe", cfg.observe, "Previously observed NODE=true|false")
      ->take_all()
      ->allow_extra_args(false);
  sub->add_option("--evidence", cfg.evidence, "New evidence NODE=true|false")->required();
  auto* interest = sub->add_option("--interest", cfg.interest, "Node of interest");
  if (interest_required) interest->required();
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qualitative probabilistic network sign propagation and trade-off explanation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* propagate_cmd = app.add_subcommand("propagate", "Propagate the sign of new evidence");
  add_common(propagate_cmd, cfg, false);
  propagate_cmd->add_flag("--trace", cfg.trace, "Append the message log");

  auto* explain_cmd = app.add_subcommand("explain", "Explain an ambiguous sign");
  add_common(explain_cmd, cfg, true);
  explain_cmd->add_option("--depth", cfg.depth, "Levels of nested explanations")
      ->capture_default_str();

  auto* relevant_cmd = app.add_subcommand("relevant", "Print the relevant network");
  add_common(relevant_cmd, cfg, true);

  auto* check_cmd = app.add_subcommand("check", "Check propagated signs against exact inference");
  add_common(check_cmd, cfg, false);
  check_cmd->add_option("--trials", cfg.trials, "Quantified trials")->capture_default_str();
  check_cmd->add_option("--seed", cfg.seed, "Seed of the first trial")->capture_default_str();
  check_cmd->add_option("--reference", cfg.reference,
                        "Draw the numbers from this network instead (same nodes)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*propagate_cmd) return cmd_propagate(cfg);
    if (*explain_cmd) return cmd_explain(cfg);
    if (*relevant_cmd) return cmd_relevant(cfg);
    return cmd_check(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
