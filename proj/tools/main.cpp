#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "entangle/core.hpp"

using namespace entangle;
using namespace entangle::cli;

namespace {

StateDocument read_document(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw usage_error("malformed JSON in '" + path + "': " + e.what());
  }
  return state_document_from_json(j);
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  std::string out_path;
  std::string format = "json";
  app.add_option("--seed", opts.seed, "Seed for randomized optimizers and demos");
  app.add_option("--tol", opts.tol, "Product-state purity tolerance for classification");
  app.add_option("--out", out_path, "Write output to this file instead of stdout");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto* make = app.add_subcommand("make", "Construct a named state and emit its JSON document");
  std::string make_name;
  MakeParams mp;
  make->add_option("name", make_name, "bell, ghz, w, graph, smolin, upb, psi25, phi-a, acin")->required();
  make->add_option("--n", mp.n, "Number of parties (ghz)");
  make->add_option("--d", mp.d, "Local dimension (bell, ghz)");
  make->add_option("--lambda", mp.lambda, "Comma-separated weights (ghz)");
  make->add_option("--edges", mp.edges, "Edge list like 0-1,1-2 (graph)");
  make->add_option("--vertices", mp.vertices, "Vertex count (graph)");
  make->add_option("--a", mp.a, "Complex parameter like 1+0i (phi-a)");
  make->add_option("--r", mp.r, "r0,r1,r2,r3,r4 (acin)");
  make->add_option("--theta", mp.theta, "Phase on |000> (acin)");

  auto* analyze_cmd = app.add_subcommand("analyze", "Run analyses on a state document");
  std::string analyze_path;
  std::vector<std::string> which;
  analyze_cmd->add_option("state", analyze_path, "State document, or - for stdin")->required();
  analyze_cmd->add_option("--which", which, "invariants,tangles,class,schmidt,ppt,polytope,geometric-measure");
  analyze_cmd->add_option("--restarts", opts.restarts, "Optimizer restarts");

  auto* convert = app.add_subcommand("convert-check", "Deterministic LOCC convertibility of two pure states");
  std::string source_path, target_path, bip_text;
  int catalyst_dim = 0, grid = 100;
  convert->add_option("source", source_path)->required();
  convert->add_option("target", target_path)->required();
  convert->add_option("--bipartition", bip_text, "e.g. A|B, 0,1|2 or [[0],[1]]; default first party vs rest");
  convert->add_option("--catalyst-dim", catalyst_dim, "Search a catalyst of this Schmidt rank");
  convert->add_option("--grid", grid, "Catalyst grid resolution");

  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate analyses over a state family");
  std::string family, grid_text;
  std::vector<std::string> sweep_analyses;
  sweep_cmd->add_option("family", family, "ghz-noise, phi-a, acin-grid")->required();
  sweep_cmd->add_option("--grid", grid_text, "start:stop:step, a comma list, or r-tuples separated by ; (acin-grid)")
      ->required();
  sweep_cmd->add_option("--analysis", sweep_analyses, "purity,ppt,polytope,invariants")->required();

  auto* tele = app.add_subcommand("teleport-demo", "Teleport a random mixed state and tabulate the branches");
  int tele_d = 2;
  tele->add_option("--d", tele_d, "Dimension of the teleported system");

  auto* unlock = app.add_subcommand("unlock-demo", "Bell measurement on two parties of the Smolin state");
  std::string pair_text = "CD";
  unlock->add_option("--pair", pair_text, "Joined parties, e.g. CD or 2,3");

  auto* ame = app.add_subcommand("ame-table", "AME existence verdicts over an (n, d) grid");
  std::string ame_n = "2:8", ame_d = "2:7";
  ame->add_option("--n", ame_n, "Party counts, lo:hi or list");
  ame->add_option("--d", ame_d, "Local dimensions, lo:hi or list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  int status = kExitOk;
  std::string output;
  try {
    auto emit_json = [&](const json& j) { output = j.dump(2) + "\n"; };
    auto emit_table = [&](const Table& t) { output = format == "csv" ? to_csv(t) : to_json(t).dump(2) + "\n"; };
    auto require_json = [&](const char* cmd) {
      if (format != "json") throw usage_error(std::string(cmd) + " only emits json");
    };

    if (*make) {
      require_json("make");
      emit_json(to_json(make_state(make_name, mp)));
    } else if (*analyze_cmd) {
      require_json("analyze");
      const auto doc = read_document(analyze_path);
      auto ids = split_list(which);
      if (ids.empty()) ids = kAllAnalyses;
      bool converged = true;
      emit_json(analyze(doc, ids, opts, converged));
      if (!converged) status = kExitNonConvergence;
    } else if (*convert) {
      require_json("convert-check");
      const auto src = read_document(source_path);
      const auto tgt = read_document(target_path);
      const int n = static_cast<int>(src.dims().size());
      if (n < 2) throw usage_error("convert-check needs at least two parties");
      const Partition bip = bip_text.empty() ? Partition::bipartition({0}, n) : parse_partition(bip_text, n);
      if (bip.block_count() != 2) throw usage_error("--bipartition must have two blocks");
      emit_json(convert_check(src, tgt, bip, catalyst_dim, grid));
    } else if (*sweep_cmd) {
      emit_table(sweep(family, grid_text, split_list(sweep_analyses)));
    } else if (*tele) {
      require_json("teleport-demo");
      emit_json(teleport_demo(tele_d, opts));
    } else if (*unlock) {
      require_json("unlock-demo");
      std::vector<int> idx;
      if (pair_text.find(',') != std::string::npos) {
        for (double v : parse_real_list(pair_text)) idx.push_back(static_cast<int>(v));
      } else {
        for (char c : pair_text) idx.push_back(std::toupper(static_cast<unsigned char>(c)) - 'A');
      }
      if (idx.size() != 2) throw usage_error("--pair needs exactly two parties");
      emit_json(unlock_demo({idx[0], idx[1]}));
    } else if (*ame) {
      emit_table(ame_table(parse_int_range(ame_n), parse_int_range(ame_d)));
    }
  } catch (const convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (out_path.empty()) {
    std::cout << output;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    out << output;
  }
  return status;
}
