// herbnet: check, normalize, extract and export Herbrand nets.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "herbnet/herbrand.hpp"
#include "herbnet/io.hpp"
#include "herbnet/net.hpp"
#include "herbnet/reduce.hpp"
#include "json.hpp"

using namespace herbnet;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, Failed = 1, BadInput = 2, Budget = 3, Precondition = 4 };

struct RunConfig {
  std::string input;
  std::string theory;
  std::string strategy = "minimal";
  std::string cut;
  std::size_t max_steps = 1000;
  int depth = 1;
  std::string format = "text";
  std::string output;
};

struct Input {
  NetFile net;
  GroundingConfig grounding;
};

Input load(const RunConfig& cfg) {
  Input in;
  in.net = load_net(cfg.input);
  if (!cfg.theory.empty()) in.net.theory = load_theory(cfg.theory, in.net.theory);
  in.grounding.depth = cfg.depth;
  return in;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw std::ios_base::failure("cannot write " + cfg.output);
  out << text;
}

// "left" and "right" name the first and last cut root in file order.
std::optional<int> resolve_cut(const Forest& f, const std::string& which) {
  if (which.empty()) return std::nullopt;
  std::vector<int> cuts;
  for (const auto& r : f.roots)
    if (r.kind == NodeKind::Cut) cuts.push_back(r.id);
  if (cuts.empty()) throw PreconditionError("--cut given but the net has no cuts");
  if (which == "left") return cuts.front();
  if (which == "right") return cuts.back();
  int id = 0;
  try {
    id = std::stoi(which);
  } catch (const std::exception&) {
    throw std::invalid_argument("--cut expects left, right or a node id");
  }
  if (std::find(cuts.begin(), cuts.end(), id) == cuts.end())
    throw PreconditionError("node " + which + " is not a cut root");
  return id;
}

int cmd_check(const RunConfig& cfg) {
  Input in = load(cfg);
  NetReport rep = check_net(in.net.forest, in.net.theory, {}, in.grounding);
  if (cfg.format == "json") {
    json j;
    j["net"] = rep.ok;
    j["failures"] = rep.failures;
    emit(cfg, j.dump(2));
  } else {
    std::string text = rep.ok ? "net: yes\n" : "net: no\n";
    for (const auto& f : rep.failures) text += "  " + f + "\n";
    emit(cfg, text);
  }
  return rep.ok ? Ok : Failed;
}

int cmd_normalize(const RunConfig& cfg) {
  Input in = load(cfg);
  const Forest& start = in.net.forest;
  NormalizeOptions opt;
  opt.strategy = parse_strategy(cfg.strategy);
  opt.max_steps = cfg.max_steps;
  opt.first_cut = resolve_cut(start, cfg.cut);
  opt.keep_states = true;
  if (opt.strategy == Strategy::Minimal && !is_herbrand_net(start, in.net.theory))
    throw PreconditionError("input is not a Herbrand net");

  NormalizeResult res = normalize(start, opt);
  // The initial net reappearing inside a later state means the reduction cannot finish.
  int growth = -1;
  if (res.status == NormalStatus::Budget)
    for (std::size_t k = 0; k < res.trace.states.size() && growth < 0; ++k)
      if (embeds(start, res.trace.states[k])) growth = static_cast<int>(k + 1);

  auto ws = witnesses(res.forest);
  if (cfg.format == "json") {
    json j;
    j["status"] = status_name(res.status);
    j["message"] = res.message;
    j["steps"] = res.trace.steps.size();
    j["trace"] = json::parse(trace_to_json(res.trace));
    j["result"] = json::parse(net_to_json(res.forest, in.net.theory));
    j["witnesses"] = json::array();
    for (const auto& w : ws) j["witnesses"].push_back(render(w));
    if (growth >= 0) j["growth_step"] = growth;
    emit(cfg, j.dump(2));
  } else if (cfg.format == "dot") {
    emit(cfg, to_dot(res.forest));
  } else {
    std::string text;
    for (std::size_t k = 0; k < res.trace.steps.size(); ++k) {
      const auto& s = res.trace.steps[k];
      text += std::to_string(k + 1) + " " + step_name(s.kind) + " cut " + std::to_string(s.cut) + "  size " +
              std::to_string(s.after.size) + " wrank " + std::to_string(s.after.wrank) + "\n";
    }
    text += "status: " + status_name(res.status);
    if (!res.message.empty()) text += " (" + res.message + ")";
    text += "\n";
    if (growth >= 0) text += "growth detected: the input net reappears after step " + std::to_string(growth) + "\n";
    if (res.status == NormalStatus::Normal) {
      text += render(res.forest);
      text += "witnesses:";
      for (const auto& w : ws) text += " " + render(w);
      text += "\n";
    }
    emit(cfg, text);
  }
  switch (res.status) {
    case NormalStatus::Normal:
      return Ok;
    case NormalStatus::Budget:
      return Budget;
    case NormalStatus::Garbage:
      return Failed;
    case NormalStatus::Stuck:
      return Precondition;
  }
  return Failed;
}

int cmd_extract(const RunConfig& cfg) {
  Input in = load(cfg);
  if (!cut_free(in.net.forest)) {
    std::cerr << "error: the net has cuts; run `herbnet normalize --format json` first\n";
    return Precondition;
  }
  HerbrandProof hp = extract_herbrand_proof(in.net.forest, in.net.theory, in.grounding);
  HerbrandCheck chk = verify_herbrand_proof(in.net.forest.roots[0].type.f, hp, in.net.theory, in.grounding);
  if (cfg.format == "json") {
    json j = json::parse(herbrand_to_json(hp));
    j["verified"] = chk.ok;
    if (!chk.ok) j["failure"] = chk.clause + ": " + chk.message;
    emit(cfg, j.dump(2));
  } else {
    std::string text = "expansion:        " + render(hp.expansion) + "\n";
    text += "prenexification:  " + render(hp.prenexification) + "\n";
    text += "sigma:           ";
    for (const auto& t : hp.sigma) text += " " + render(t);
    text += "\nverified: " + std::string(chk.ok ? "yes" : "no, " + chk.clause + ": " + chk.message) + "\n";
    emit(cfg, text);
  }
  return chk.ok ? Ok : Failed;
}

int cmd_export_dot(const RunConfig& cfg) {
  Input in = load(cfg);
  auto vs = check_annotated_sequent(in.net.forest);
  if (!vs.empty()) throw PreconditionError(vs.front().message);
  emit(cfg, to_dot(in.net.forest));
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* seed = std::getenv("HERBNET_SEED")) set_default_name_base(std::atol(seed));

  CLI::App app{"Herbrand nets: correctness, cut elimination and Herbrand proofs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "net file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--theory", cfg.theory, "extra theory file (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--depth", cfg.depth, "grounding depth for theory axioms")->check(CLI::NonNegativeNumber);
    sub->add_option("-o,--output", cfg.output, "write the result here instead of stdout");
  };

  auto* check = app.add_subcommand("check", "decide whether the input is a Herbrand net");
  common(check);
  check->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

  auto* normalize = app.add_subcommand("normalize", "eliminate cuts");
  common(normalize);
  normalize->add_option("--strategy", cfg.strategy)->check(CLI::IsMember({"minimal", "empire", "dependent"}));
  normalize->add_option("--cut", cfg.cut, "first cut to reduce: left, right or a node id");
  normalize->add_option("--max-steps", cfg.max_steps)->check(CLI::PositiveNumber);
  normalize->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "dot"}));

  auto* extract = app.add_subcommand("extract", "read an Herbrand proof off a cut-free net");
  common(extract);
  extract->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

  auto* dot = app.add_subcommand("export-dot", "dependency graph in DOT");
  common(dot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : BadInput;
  }

  try {
    if (*check) return cmd_check(cfg);
    if (*normalize) return cmd_normalize(cfg);
    if (*extract) return cmd_extract(cfg);
    if (*dot) return cmd_export_dot(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return BadInput;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return BadInput;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return BadInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Precondition;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Budget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return BadInput;
  }
  return Ok;
}
