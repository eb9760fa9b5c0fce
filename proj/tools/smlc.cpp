#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smlc/detection.hpp"
#include "smlc/estimation.hpp"
#include "smlc/graph.hpp"
#include "smlc/metrics.hpp"
#include "smlc/planted.hpp"
#include "smlc/sampling.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Config {
  std::string graph;
  std::string seed;
  std::string seeds_file;
  std::string method = "ppr";
  double alpha = 0.99;
  double epsilon = 1e-3;
  double t = 40.0;
  double beta = 1e-4;
  std::optional<double> theta;
  int restarts = 5;
  int votes = 3;
  std::uint64_t rng_seed = 0;
  bool as_json = false;
  std::string out;
  std::string gt;
  std::string baseline;
  std::string communities;
  // gen
  int k = 2;
  int size = 10;
  double p_in = 1.0;
  double p_out = 0.0;
  int overlap = 0;

  bool alpha_set = false;
  bool t_set = false;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string join_labels(const smlc::Graph& g, const smlc::NodeSet& s, char sep = ' ') {
  std::string out;
  for (smlc::NodeId v : s) {
    if (!out.empty()) out += sep;
    out += g.label(v);
  }
  return out;
}

json labels_json(const smlc::Graph& g, const smlc::NodeSet& s) {
  json arr = json::array();
  for (smlc::NodeId v : s) arr.push_back(g.label(v));
  return arr;
}

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }
std::string optional_text(const std::optional<double>& x) { return x ? num(*x) : "NA"; }

// A result block: ordered key=value pairs followed by TSV rows, plus the same
// content as JSON.
struct Block {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  json doc = json::object();

  void put(const std::string& key, const std::string& text, json value) {
    header.emplace_back(key, text);
    doc[key] = std::move(value);
  }
  void put(const std::string& key, double x) { put(key, num(x), x); }
  void put(const std::string& key, long long x) { put(key, std::to_string(x), x); }
  void put(const std::string& key, bool x) { put(key, x ? "true" : "false", x); }
  void put(const std::string& key, const std::string& s) { put(key, s, json(s)); }

  std::string text() const {
    std::string out;
    for (const auto& [k, v] : header) out += k + "=" + v + "\n";
    if (!columns.empty()) {
      std::string line;
      for (const auto& c : columns) line += (line.empty() ? "" : "\t") + c;
      out += line + "\n";
      for (const auto& r : rows) {
        line.clear();
        for (std::size_t i = 0; i < r.size(); ++i) line += (i ? "\t" : "") + r[i];
        out += line + "\n";
      }
    }
    return out;
  }
};

smlc::DiffusionParams diffusion_params(const Config& c) {
  if (c.method == "hk") return smlc::HkParams(c.t, c.epsilon);
  smlc::PprParams p;
  p.alpha = c.alpha;
  p.epsilon = c.epsilon;
  p.validate();
  return p;
}

smlc::EstimationParams estimation_params(const Config& c) {
  smlc::EstimationParams p;
  p.beta = c.beta;
  p.restarts = c.restarts;
  p.rng_seed = c.rng_seed;
  p.validate();
  return p;
}

void echo_config(Block& b, const std::string& command, const Config& c) {
  b.put("command", command);
  b.put("graph", c.graph);
  b.put("method", c.method);
  if (c.method == "hk") {
    b.put("t", c.t);
  } else {
    b.put("alpha", c.alpha);
  }
  b.put("epsilon", c.epsilon);
  b.put("beta", c.beta);
  b.put("restarts", static_cast<long long>(c.restarts));
  b.put("votes", static_cast<long long>(c.votes));
  b.put("rng_seed", std::to_string(c.rng_seed), json(c.rng_seed));
  if (c.theta) b.put("theta_override", *c.theta);
}

std::vector<std::string> read_seeds(const Config& c) {
  std::vector<std::string> seeds;
  if (!c.seeds_file.empty()) {
    std::ifstream in(c.seeds_file);
    if (!in) throw std::runtime_error("cannot open seeds file '" + c.seeds_file + "'");
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream tokens(line);
      std::string s;
      if (tokens >> s && s[0] != '#') seeds.push_back(s);
    }
  }
  if (!c.seed.empty()) seeds.insert(seeds.begin(), c.seed);
  if (seeds.empty()) throw std::runtime_error("no seed given; use --seed or --seeds-file");
  return seeds;
}

Block sample_block(const smlc::Graph& g, const Config& c, const std::string& seed_label,
                   const std::vector<smlc::NodeSet>* gt) {
  const smlc::NodeId seed = g.index_of(seed_label);
  const smlc::Sample s = smlc::local_sample(g, seed, diffusion_params(c));
  const smlc::NodeSet nodes = s.parent_nodes();
  Block b;
  b.put("seed", seed_label);
  b.put("size", static_cast<long long>(nodes.size()));
  b.put("support_size", static_cast<long long>(s.support.size()));
  b.put("biconnected", !s.widened);
  if (gt) {
    const auto mine = smlc::communities_containing(*gt, seed);
    if (mine.empty()) throw std::domain_error("seed '" + seed_label + "' is in no ground-truth community");
    const std::vector<smlc::NodeSet> detected{nodes};
    double rec = 0.0;
    for (const auto& m : mine) rec += smlc::recall(m, detected);
    b.put("precision", smlc::precision(nodes, mine));
    b.put("recall", rec / static_cast<double>(mine.size()));
  }
  b.columns = {"label"};
  for (smlc::NodeId v : nodes) b.rows.push_back({g.label(v)});
  b.doc["nodes"] = labels_json(g, nodes);
  return b;
}

Block estimate_block(const smlc::Graph& g, const Config& c, const std::string& seed_label) {
  Block b;
  if (!seed_label.empty()) b.put("seed", seed_label);
  const smlc::Graph* on = &g;
  smlc::Sample s;
  if (!seed_label.empty()) {
    s = smlc::local_sample(g, g.index_of(seed_label), diffusion_params(c));
    b.put("sample_size", static_cast<long long>(s.graph().node_count()));
    on = &s.graph();
  }
  if (c.baseline == "modularity") {
    const auto m = smlc::modularity_estimate_k(*on);
    b.put("baseline", std::string("modularity"));
    b.put("k_mod", static_cast<long long>(m.k));
    b.put("modularity", m.q);
    b.columns = {"community", "size", "members"};
    json parts = json::array();
    for (std::size_t i = 0; i < m.partition.size(); ++i) {
      smlc::NodeSet labels_in_parent = m.partition[i];
      if (!seed_label.empty()) {
        std::vector<smlc::NodeId> mapped;
        for (smlc::NodeId v : m.partition[i]) mapped.push_back(s.sub.to_parent[v]);
        labels_in_parent = smlc::NodeSet(mapped);
      }
      b.rows.push_back({std::to_string(i), std::to_string(labels_in_parent.size()),
                        join_labels(g, labels_in_parent)});
      parts.push_back(labels_json(g, labels_in_parent));
    }
    b.doc["partition"] = parts;
    return b;
  }
  const auto r = smlc::estimate_k_voted(*on, estimation_params(c), c.votes);
  b.put("k_prime", static_cast<long long>(r.k_prime));
  b.put("best_sparseness", r.best_sparseness);
  b.put("degenerate", r.degenerate);
  std::string ballots;
  for (int k : r.ballots) ballots += (ballots.empty() ? "" : ",") + std::to_string(k);
  b.put("ballots", ballots, json(r.ballots));
  b.columns = {"k", "mean_sparseness", "mean_sparseness_over_k", "running_max"};
  json trace = json::array();
  for (const auto& p : r.sweep_trace) {
    b.rows.push_back({std::to_string(p.k), num(p.mean_over_nodes), num(p.mean_over_k),
                      num(p.running_max)});
    trace.push_back({{"k", p.k},
                     {"mean_sparseness", p.mean_over_nodes},
                     {"mean_sparseness_over_k", p.mean_over_k},
                     {"running_max", p.running_max}});
  }
  b.doc["sweep"] = trace;
  return b;
}

smlc::DetectionParams detection_params(const Config& c) {
  smlc::DetectionParams p;
  p.theta_override = c.theta;
  p.diffusion = diffusion_params(c);
  p.estimation = estimation_params(c);
  p.votes = c.votes;
  return p;
}

void put_communities(Block& b, const smlc::Graph& g, const std::vector<smlc::NodeSet>& cs) {
  b.columns = {"community", "size", "members"};
  json arr = json::array();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    b.rows.push_back({std::to_string(i), std::to_string(cs[i].size()), join_labels(g, cs[i])});
    arr.push_back(labels_json(g, cs[i]));
  }
  b.doc["communities"] = arr;
}

Block detect_block(const smlc::Graph& g, const Config& c, const std::string& seed_label) {
  const auto r = smlc::s_mlc(g, seed_label, detection_params(c));
  Block b;
  b.put("seed", seed_label);
  b.put("sample_size", static_cast<long long>(r.sample.graph().node_count()));
  b.put("biconnected", !r.sample.widened);
  b.put("k_prime", static_cast<long long>(r.k_prime));
  b.put("theta", r.theta);
  b.put("community_count", static_cast<long long>(r.communities.size()));
  put_communities(b, g, r.communities);
  return b;
}

Block eval_block(const smlc::Graph& g, const Config& c, const std::string& seed_label,
                 const std::vector<smlc::NodeSet>& gt) {
  const smlc::NodeId seed = g.index_of(seed_label);
  std::vector<smlc::NodeSet> detected;
  if (!c.communities.empty()) {
    for (auto& s : smlc::load_communities_file(c.communities, g))
      if (s.contains(seed)) detected.push_back(std::move(s));
  } else {
    detected = smlc::s_mlc(g, seed, detection_params(c)).communities;
  }
  const auto report = smlc::evaluate(g, gt, detected, seed);
  Block b;
  b.put("seed", seed_label);
  b.put("mean_precision", report.mean_precision);
  b.put("mean_recall", report.mean_recall);
  b.put("f1", report.f1);
  b.put("f2", report.f2);
  b.put("mean_conductance", optional_text(report.mean_conductance),
        optional_json(report.mean_conductance));
  b.put("mean_gt_conductance", optional_text(report.mean_gt_conductance),
        optional_json(report.mean_gt_conductance));
  b.columns = {"kind", "index", "size", "score", "f1", "f2", "conductance", "members"};
  json det = json::array(), truth = json::array();
  for (std::size_t i = 0; i < report.detected.size(); ++i) {
    const auto& d = report.detected[i];
    b.rows.push_back({"detected", std::to_string(i), std::to_string(d.community.size()),
                      num(d.precision), num(d.f1), num(d.f2), optional_text(d.conductance),
                      join_labels(g, d.community)});
    det.push_back({{"members", labels_json(g, d.community)},
                   {"precision", d.precision},
                   {"f1", d.f1},
                   {"f2", d.f2},
                   {"conductance", optional_json(d.conductance)}});
  }
  for (std::size_t i = 0; i < report.ground_truth.size(); ++i) {
    const auto& t = report.ground_truth[i];
    b.rows.push_back({"truth", std::to_string(i), std::to_string(t.community.size()),
                      num(t.recall), num(t.f1), num(t.f2), optional_text(t.conductance),
                      join_labels(g, t.community)});
    truth.push_back({{"members", labels_json(g, t.community)},
                     {"recall", t.recall},
                     {"f1", t.f1},
                     {"f2", t.f2},
                     {"conductance", optional_json(t.conductance)}});
  }
  b.doc["detected"] = det;
  b.doc["ground_truth"] = truth;
  return b;
}

void emit(const Config& c, const Block& config_block, const std::vector<Block>& blocks) {
  std::string text;
  if (c.as_json) {
    json doc = config_block.doc;
    json results = json::array();
    for (const auto& b : blocks) results.push_back(b.doc);
    doc["results"] = results;
    text = doc.dump(2) + "\n";
  } else {
    text = config_block.text();
    for (const auto& b : blocks) text += "\n" + b.text();
  }
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out);
  if (!out) throw std::runtime_error("cannot write '" + c.out + "'");
  out << text;
}

template <typename Fn>
std::vector<Block> per_seed(const std::vector<std::string>& seeds, Fn fn) {
  std::vector<std::future<Block>> jobs;
  for (const auto& s : seeds) jobs.push_back(std::async(std::launch::deferred, fn, s));
  std::vector<Block> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

void run(const std::string& command, const Config& c) {
  if (command == "gen") {
    const auto planted = smlc::generate_planted(c.k, c.size, c.p_in, c.p_out, c.overlap, c.rng_seed);
    if (planted.disconnected_blocks)
      std::cerr << "smlc: warning: p_out = 0 and overlap = 0 leave the blocks disconnected\n";
    std::ostringstream text;
    text << "# k=" << c.k << " size=" << c.size << " p_in=" << num(c.p_in)
         << " p_out=" << num(c.p_out) << " overlap=" << c.overlap << " rng_seed=" << c.rng_seed
         << "\n";
    smlc::write_edge_list(planted.graph, text);
    if (c.out.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream out(c.out);
      if (!out) throw std::runtime_error("cannot write '" + c.out + "'");
      out << text.str();
    }
    if (!c.gt.empty()) {
      std::ofstream out(c.gt);
      if (!out) throw std::runtime_error("cannot write '" + c.gt + "'");
      for (const auto& block : planted.communities)
        out << join_labels(planted.graph, block) << "\n";
    }
    return;
  }

  if (c.method == "ppr" && c.t_set) throw std::runtime_error("--t applies only to --method hk");
  if (c.method == "hk" && c.alpha_set) throw std::runtime_error("--alpha applies only to --method ppr");
  const smlc::Graph g = smlc::load_edge_list_file(c.graph);
  Block config_block;
  echo_config(config_block, command, c);

  std::vector<smlc::NodeSet> gt;
  if (!c.gt.empty()) gt = smlc::load_communities_file(c.gt, g);

  std::vector<Block> blocks;
  if (command == "sample") {
    blocks = per_seed(read_seeds(c), [&](const std::string& s) {
      return sample_block(g, c, s, c.gt.empty() ? nullptr : &gt);
    });
  } else if (command == "estimate-k") {
    std::vector<std::string> seeds;
    if (!c.seed.empty() || !c.seeds_file.empty()) seeds = read_seeds(c);
    if (seeds.empty()) {
      blocks.push_back(estimate_block(g, c, ""));
    } else {
      blocks = per_seed(seeds, [&](const std::string& s) { return estimate_block(g, c, s); });
    }
  } else if (command == "detect") {
    blocks = per_seed(read_seeds(c), [&](const std::string& s) { return detect_block(g, c, s); });
  } else if (command == "eval") {
    if (c.gt.empty()) throw std::runtime_error("eval needs --gt");
    blocks = per_seed(read_seeds(c), [&](const std::string& s) { return eval_block(g, c, s, gt); });
  }
  emit(c, config_block, blocks);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local overlapping community detection from a seed node"};
  app.require_subcommand(1);
  Config c;

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--graph", c.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", c.seed, "Seed node label");
    sub->add_option("--seeds-file", c.seeds_file, "File with one seed label per line");
    sub->add_option("--method", c.method, "Diffusion: ppr or hk")
        ->check(CLI::IsMember({"ppr", "hk"}));
    sub->add_option("--alpha", c.alpha, "PPR teleport complement")
        ->each([&](const std::string&) { c.alpha_set = true; });
    sub->add_option("--epsilon", c.epsilon, "Diffusion tolerance");
    sub->add_option("--t", c.t, "Heat-kernel temperature")
        ->each([&](const std::string&) { c.t_set = true; });
    sub->add_option("--beta", c.beta, "SNMF sparsity weight");
    sub->add_option("--restarts", c.restarts, "SNMF runs per k");
    sub->add_option("--votes", c.votes, "Estimation sweeps in the majority vote");
    sub->add_option("--rng-seed", c.rng_seed, "Random seed");
    sub->add_flag("--json", c.as_json, "Emit one JSON document");
    sub->add_option("--out", c.out, "Write output to this path");
    sub->add_option("--gt", c.gt, "Ground-truth community file");
  };

  auto* sample = app.add_subcommand("sample", "Diffusion-based local sample around a seed");
  add_graph(sample);
  auto* estimate = app.add_subcommand("estimate-k", "Estimate the community count");
  add_graph(estimate);
  estimate->add_option("--baseline", c.baseline, "Alternative estimator")
      ->check(CLI::IsMember({"modularity"}));
  auto* detect = app.add_subcommand("detect", "Detect the seed's communities");
  add_graph(detect);
  detect->add_option("--theta", c.theta, "Membership threshold in (0, 1]");
  auto* eval = app.add_subcommand("eval", "Score detected communities against ground truth");
  add_graph(eval);
  eval->add_option("--theta", c.theta, "Membership threshold in (0, 1]");
  eval->add_option("--communities", c.communities,
                   "Evaluate these communities instead of running detection");

  auto* gen = app.add_subcommand("gen", "Generate a planted overlapping partition graph");
  gen->add_option("--k", c.k, "Number of blocks");
  gen->add_option("--size", c.size, "Nodes per block");
  gen->add_option("--p-in", c.p_in, "Edge probability inside a block");
  gen->add_option("--p-out", c.p_out, "Edge probability across blocks");
  gen->add_option("--overlap", c.overlap, "Nodes shared by consecutive blocks");
  gen->add_option("--rng-seed", c.rng_seed, "Random seed");
  gen->add_option("--out", c.out, "Edge-list output path");
  gen->add_option("--gt", c.gt, "Community output path");

  CLI11_PARSE(app, argc, argv);
  try {
    run(app.get_subcommands().front()->get_name(), c);
  } catch (const std::exception& e) {
    std::cerr << "smlc: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
