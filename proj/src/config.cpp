#include "eqnn/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "eqnn/csv.hpp"

namespace eqnn {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"experiment",
       {"dataset", "model", "depth", "hidden", "equivariant_width", "param_budget",
        "budget_layers", "activation", "n_train", "n_test", "seeds", "output_dir"}},
      {"train", {"epochs", "batch_size", "lr", "eval_each_epoch"}},
      {"sweep", {"axis", "values", "fixed", "models"}},
  };
  return keys;
}

pt::ptree read_tree(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end() || !body.data().empty()) {
      throw ConfigError("unknown config section or top-level key '" + section + "'");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) {
        throw ConfigError("unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
  return tree;
}

std::string trimmed(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::optional<std::string> get(const pt::ptree& tree, const std::string& path) {
  if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) {
    return trimmed(*v);
  }
  return std::nullopt;
}

template <class F>
auto convert(const std::string& key, const std::string& text, F f) {
  try {
    return f(text);
  } catch (const std::exception& e) {
    throw ConfigError("bad value for '" + key + "': '" + text + "'");
  }
}

long long as_int(const std::string& key, const std::string& text) {
  return convert(key, text, [](const std::string& t) { return csv::parse_int(t); });
}

std::size_t as_count(const std::string& key, const std::string& text) {
  const long long v = as_int(key, text);
  if (v < 0) throw ConfigError("'" + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

bool as_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("bad value for '" + key + "': '" + text + "'");
}

void apply(const pt::ptree& tree, ExperimentConfig& c) {
  if (auto v = get(tree, "experiment.dataset")) {
    c.dataset = convert("dataset", *v, [](const std::string& t) { return parse_dataset_kind(t); });
  }
  if (auto v = get(tree, "experiment.model")) c.model = parse_model_kind(*v);
  if (auto v = get(tree, "experiment.depth")) c.depth = static_cast<int>(as_int("depth", *v));
  if (auto v = get(tree, "experiment.hidden")) c.hidden = parse_size_list(*v);
  if (auto v = get(tree, "experiment.equivariant_width")) {
    c.equivariant_width = as_count("equivariant_width", *v);
  }
  if (auto v = get(tree, "experiment.param_budget")) c.param_budget = as_count("param_budget", *v);
  if (auto v = get(tree, "experiment.budget_layers")) {
    c.budget_layers = as_count("budget_layers", *v);
  }
  if (auto v = get(tree, "experiment.activation")) {
    c.activation =
        convert("activation", *v, [](const std::string& t) { return parse_activation(t); });
  }
  if (auto v = get(tree, "experiment.n_train")) c.n_train = as_count("n_train", *v);
  if (auto v = get(tree, "experiment.n_test")) c.n_test = as_count("n_test", *v);
  if (auto v = get(tree, "experiment.seeds")) {
    c.seeds.clear();
    for (std::size_t s : parse_size_list(*v)) c.seeds.push_back(s);
  }
  if (auto v = get(tree, "experiment.output_dir")) c.output_dir = *v;
  if (auto v = get(tree, "train.epochs")) c.epochs = static_cast<int>(as_int("epochs", *v));
  if (auto v = get(tree, "train.batch_size")) c.batch_size = as_count("batch_size", *v);
  if (auto v = get(tree, "train.lr")) {
    c.lr = convert("lr", *v, [](const std::string& t) { return csv::parse_double(t); });
  }
  if (auto v = get(tree, "train.eval_each_epoch")) c.eval_each_epoch = as_bool("eval_each_epoch", *v);
}

}  // namespace

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& field : csv::split_line(text)) {
    const std::string f = trimmed(field);
    if (f.empty()) continue;
    out.push_back(as_count("list", f));
  }
  return out;
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  const pt::ptree tree = read_tree(in);
  ExperimentConfig c;
  apply(tree, c);
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_experiment_config(in);
}

SweepSpec parse_sweep_spec(std::istream& in) {
  const pt::ptree tree = read_tree(in);
  ExperimentConfig base;
  apply(tree, base);

  SweepSpec spec;
  if (auto v = get(tree, "sweep.axis")) spec.axis = parse_sweep_axis(*v);
  if (auto v = get(tree, "sweep.values")) spec.values = parse_size_list(*v);
  if (auto v = get(tree, "sweep.fixed")) spec.fixed = as_count("fixed", *v);
  std::vector<ModelKind> models{base.model};
  if (auto v = get(tree, "sweep.models")) {
    models.clear();
    for (const auto& m : csv::split_line(*v)) models.push_back(parse_model_kind(trimmed(m)));
  }
  for (ModelKind m : models) {
    ExperimentConfig c = base;
    c.model = m;
    spec.templates.push_back(c);
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_sweep_spec(in);
}

}  // namespace eqnn
