// cohere: coherence checking for multimodal robot failure explanations.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "cohere/dataset.h"
#include "cohere/domain.h"
#include "cohere/entailment.h"
#include "cohere/error.h"
#include "cohere/forge.h"
#include "cohere/json_io.h"
#include "cohere/refinement.h"
#include "cohere/text_bridge.h"

namespace fs = std::filesystem;
using namespace cohere;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kInternal = 3 };

const fs::path kDataDir = COHERE_DATA_DIR;

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string explanation_text(const std::string& text, const std::string& text_file) {
  if (!text.empty()) return text;
  std::string s = slurp(text_file);
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

void print_witness(const char* side, const Verdict& v) {
  std::cout << side << ": " << to_string(v.label);
  if (v.witness) {
    const Witness& w = *v.witness;
    std::cout << "  [" << to_string(w.kind) << "] " << serialize_proposition(w.premise) << " vs "
              << serialize_proposition(w.hypothesis);
    if (!w.rule_id.empty()) std::cout << " rule " << w.rule_id;
    if (!w.sources.empty()) {
      std::cout << " from";
      for (const auto& s : w.sources) std::cout << ' ' << serialize_proposition(s);
    }
  }
  std::cout << '\n';
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string render_dot(const Episode& episode, std::size_t step) {
  if (step >= episode.observations.size()) {
    throw ValidationError("step " + std::to_string(step) + " has no observation");
  }
  SceneGraph g = filter_scene_graph(episode.observations[step], episode.plan, step);
  std::ostringstream out;
  out << "digraph episode {\n";
  out << "  label=\"" << dot_escape(episode.plan.task) << " step " << step << "\";\n";
  for (const auto& [name, node] : g.nodes()) {
    std::string label = name;
    for (const auto& [attr, value] : node.states) label += "\\n" + attr + "=" + value;
    out << "  \"" << dot_escape(name) << "\" [label=\"" << dot_escape(label) << "\"];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  \"" << dot_escape(e.src) << "\" -> \"" << dot_escape(e.dst) << "\" [label=\""
        << dot_escape(e.relation) << "\"];\n";
  }
  out << "  subgraph cluster_plan {\n    label=\"plan\";\n";
  Plan prefix = plan_prefix(episode.plan, step);
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    out << "    \"step" << k << "\" [shape=box,label=\"" << k << ": "
        << dot_escape(prefix.steps[k].to_string()) << "\"];\n";
    if (k > 0) out << "    \"step" << k - 1 << "\" -> \"step" << k << "\";\n";
  }
  out << "  }\n}\n";
  return out.str();
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence checking for multimodal robot failure explanations"};
  app.require_subcommand(1);

  // generate
  std::string gen_domain, gen_kb, gen_out, gen_lexicon, gen_tasks;
  std::size_t gen_count = 0;
  std::uint64_t gen_seed = 0;
  std::size_t max_depth = 1;
  auto* generate = app.add_subcommand("generate", "generate counterfactual labeled examples");
  generate->add_option("--domain", gen_domain, "domain JSON")->required();
  generate->add_option("--kb", gen_kb, "rule file")->required();
  generate->add_option("--count", gen_count, "number of examples")->required();
  generate->add_option("--seed", gen_seed, "random seed")->required();
  generate->add_option("--out", gen_out, "output JSONL")->required();
  generate->add_option("--lexicon", gen_lexicon, "lexicon (defaults to the domain's)");
  generate->add_option("--tasks", gen_tasks, "comma-separated task names");

  // classify / refine share their inputs
  std::string kb_path, episode_path, text, text_file;
  std::string lexicon_path = (kDataDir / "starter.lex").string();
  std::optional<std::size_t> step;
  bool as_json = false;
  auto add_pair_options = [&](CLI::App* cmd) {
    cmd->add_option("--kb", kb_path, "rule file")->required();
    cmd->add_option("--episode", episode_path, "episode JSON")->required();
    auto* t = cmd->add_option("--text", text, "textual explanation");
    auto* tf = cmd->add_option("--text-file", text_file, "file holding the explanation");
    t->excludes(tf);
    tf->excludes(t);
    cmd->add_option("--lexicon", lexicon_path, "lexicon file");
    cmd->add_option("--max-depth", max_depth, "entailment rounds");
  };
  auto* classify = app.add_subcommand("classify", "label an episode against a text");
  add_pair_options(classify);
  classify->add_option("--step", step, "observation step (default: failure step)");
  auto* refine = app.add_subcommand("refine", "classify and refine an incoherent pair");
  add_pair_options(refine);
  refine->add_flag("--json", as_json, "print JSON");

  // split
  std::string split_in, split_out, split_heldout, split_ratios;
  std::string split_domain = (kDataDir / "domain.json").string();
  std::uint64_t split_seed = 0;
  auto* split = app.add_subcommand("split", "stratified train/val/test split");
  split->add_option("--in", split_in, "input JSONL")->required();
  split->add_option("--out", split_out, "output JSONL")->required();
  split->add_option("--seed", split_seed, "random seed")->required();
  auto* heldout_opt = split->add_option("--heldout", split_heldout, "comma-separated heldout tasks");
  split->add_option("--domain", split_domain, "domain whose heldout group is used by default")
      ->excludes(heldout_opt);
  split->add_option("--ratios", split_ratios, "train,val,test");

  // evaluate
  std::string gold_path, pred_path, eval_split;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score predictions against gold labels");
  evaluate_cmd->add_option("--gold", gold_path, "gold JSONL")->required();
  evaluate_cmd->add_option("--pred", pred_path, "prediction JSONL")->required();
  evaluate_cmd->add_option("--split", eval_split, "only score this split (test includes heldout)");
  evaluate_cmd->add_flag("--json", as_json, "print JSON");

  // render
  std::string render_episode, render_out;
  std::optional<std::size_t> render_step;
  auto* render = app.add_subcommand("render", "DOT view of an episode's graphical explanation");
  render->add_option("--episode", render_episode, "episode JSON")->required();
  render->add_option("--step", render_step, "step (default: failure step)");
  render->add_option("--out", render_out, "output file (default: stdout)");

  // kb-check
  std::string check_kb;
  auto* kb_check = app.add_subcommand("kb-check", "validate a rule file");
  kb_check->add_option("--kb", check_kb, "rule file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) {
      DomainSpec domain = DomainSpec::load(gen_domain);
      KnowledgeBase kb = load_kb(gen_kb, max_depth);
      fs::path lex_path = !gen_lexicon.empty() ? fs::path(gen_lexicon)
                          : !domain.lexicon_path().empty() ? domain.lexicon_path()
                                                           : kDataDir / "starter.lex";
      Lexicon lexicon = Lexicon::load(lex_path);
      auto config = GenerationConfig::with_total(gen_count, split_csv(gen_tasks));
      auto examples = generate_dataset(domain, kb, lexicon, config, gen_seed);
      write_jsonl(gen_out, examples);
      std::map<std::pair<PairKind, Label>, std::size_t> hist;
      for (const auto& ex : examples) ++hist[{ex.pair_kind, ex.label}];
      std::cout << "wrote " << examples.size() << " examples to " << gen_out << '\n';
      for (PairKind k : {PairKind::Plan, PairKind::Observation}) {
        std::cout << "  " << to_string(k) << ':';
        for (Label l : kAllLabels) std::cout << ' ' << to_string(l) << '=' << hist[{k, l}];
        std::cout << '\n';
      }
    } else if (*classify || *refine) {
      if (text.empty() && text_file.empty()) {
        std::cerr << "one of --text or --text-file is required\n";
        return kUsage;
      }
      KnowledgeBase kb = load_kb(kb_path, max_depth);
      Lexicon lexicon = Lexicon::load(lexicon_path);
      Episode episode = load_episode(episode_path);
      auto expl = TextualExplanation::parse(explanation_text(text, text_file), lexicon);
      if (expl.props.empty()) {
        throw ValidationError("no proposition could be read from the text");
      }
      if (*classify) {
        std::size_t at = step.value_or(episode.failure_step);
        GraphicalExplanation g = graphical_explanation(episode, at);
        Verdict vp = classify_pair_explained(g.plan, expl.props, kb);
        Verdict vo = classify_pair_explained(g.observation, expl.props, kb);
        std::cout << "text: " << serialize_premise(expl.props) << '\n';
        print_witness("plan", vp);
        print_witness("observation", vo);
        std::cout << "combined: " << to_string(combine(vp.label, vo.label)) << '\n';
      } else {
        RefinementOutcome r = resolve(episode, expl, kb, lexicon);
        if (as_json) {
          std::cout << r.to_json().dump(2) << '\n';
        } else {
          std::cout << "strategy: " << to_string(r.strategy) << '\n'
                    << "step: " << r.final_step << '\n'
                    << "label: " << to_string(r.final_label) << '\n'
                    << "text: " << r.final_text.raw_text << '\n';
        }
      }
    } else if (*split) {
      SplitConfig config;
      config.seed = split_seed;
      if (!split_ratios.empty()) {
        auto parts = split_csv(split_ratios);
        if (parts.size() != 3) throw ValidationError("--ratios needs three values");
        for (std::size_t i = 0; i < 3; ++i) config.ratios[i] = std::stod(parts[i]);
      }
      if (!split_heldout.empty()) {
        for (auto& t : split_csv(split_heldout)) config.heldout_tasks.insert(t);
      } else {
        for (auto& t : DomainSpec::load(split_domain).tasks_in(TaskGroup::Heldout)) {
          config.heldout_tasks.insert(t);
        }
      }
      auto examples = stratified_split(read_jsonl(split_in), config);
      write_jsonl(split_out, examples);
      std::map<Split, std::size_t> counts;
      for (const auto& ex : examples) ++counts[*ex.split];
      for (Split s : {Split::Train, Split::Val, Split::Test, Split::Heldout}) {
        std::cout << to_string(s) << ' ' << counts[s] << '\n';
      }
    } else if (*evaluate_cmd) {
      auto gold = read_jsonl(gold_path);
      auto preds = read_predictions(pred_path);
      std::map<std::string, Label> by_id;
      for (const auto& p : preds) {
        if (!by_id.emplace(p.id, p.predicted).second) {
          throw ValidationError("duplicate prediction id " + p.id);
        }
      }
      std::vector<Label> g, p;
      for (const auto& ex : gold) {
        if (!eval_split.empty()) {
          Split want = split_from_string(eval_split);
          if (!ex.split) continue;
          bool keep = *ex.split == want || (want == Split::Test && *ex.split == Split::Heldout);
          if (!keep) continue;
        }
        auto it = by_id.find(ex.id);
        if (it == by_id.end()) throw ValidationError("no prediction for id " + ex.id);
        g.push_back(ex.label);
        p.push_back(it->second);
      }
      EvalReport report = cohere::evaluate(g, p);
      if (as_json) {
        std::cout << report.to_json().dump(2) << '\n';
      } else {
        std::cout << report.to_table();
      }
    } else if (*render) {
      Episode episode = load_episode(render_episode);
      std::string dot = render_dot(episode, render_step.value_or(episode.failure_step));
      if (render_out.empty()) {
        std::cout << dot;
      } else {
        std::ofstream out(render_out);
        if (!out) throw IoError("cannot write " + render_out);
        out << dot;
      }
    } else if (*kb_check) {
      KnowledgeBase kb = load_kb(check_kb, max_depth);
      std::cout << check_kb << ": " << kb.count(RuleKind::Entails) << " entailment rules, "
                << kb.count(RuleKind::Contradicts) << " contradiction rules (with mirrors)\n";
    }
  } catch (const LineError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
