#include "eqnn/checkpoint.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "eqnn/csv.hpp"

namespace eqnn {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<std::size_t> split_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& f : csv::split_line(text)) {
    if (f.empty()) continue;
    out.push_back(static_cast<std::size_t>(csv::parse_int(f)));
  }
  return out;
}

}  // namespace

std::string checkpoint_header(const AnyModel& model) {
  std::ostringstream h;
  std::visit(Overloaded{[&](const QuantumModel& m) {
                          h << to_string(m.kind) << " depth=" << m.depth
                            << " dataset=" << to_string(m.dataset);
                        },
                        [&](const DenseNet& net) {
                          h << "DNN layers=" << join(net.layer_sizes())
                            << " activation=" << to_string(net.activation());
                        },
                        [&](const EnnNet& net) {
                          h << "ENN group="
                            << (net.group() == OrbitGroup::Full ? "Full" : "DiagSwapOnly")
                            << " equivariant=" << net.equivariant_width()
                            << " head=" << join(net.head_hidden())
                            << " activation=" << to_string(net.activation());
                        }},
             model);
  h << " params=" << param_count(model);
  return h.str();
}

void write_checkpoint(std::ostream& out, const AnyModel& model) {
  out << checkpoint_header(model) << '\n';
  for (double p : parameters(model)) out << csv::format_double(p) << '\n';
}

void write_checkpoint(const std::filesystem::path& path, const AnyModel& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_checkpoint(out, model);
}

AnyModel read_checkpoint(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("checkpoint is empty");
  std::istringstream hs(header);
  std::string kind;
  hs >> kind;
  std::map<std::string, std::string> fields;
  for (std::string tok; hs >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad checkpoint field '" + tok + "'");
    fields[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  const auto field = [&](const std::string& key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw std::runtime_error("checkpoint header lacks '" + key + "'");
    return it->second;
  };

  AnyModel model = [&]() -> AnyModel {
    try {
      if (kind == "QNN" || kind == "EQNN") {
        const int depth = static_cast<int>(csv::parse_int(field("depth")));
        const DatasetKind ds = parse_dataset_kind(field("dataset"));
        return kind == "QNN" ? make_qnn(ds, depth) : make_eqnn(ds, depth);
      }
      if (kind == "DNN") {
        return DenseNet(split_sizes(field("layers")), parse_activation(field("activation")));
      }
      if (kind == "ENN") {
        const OrbitGroup g =
            field("group") == "Full" ? OrbitGroup::Full : OrbitGroup::DiagSwapOnly;
        return EnnNet(g, static_cast<std::size_t>(csv::parse_int(field("equivariant"))),
                      split_sizes(field("head")), parse_activation(field("activation")));
      }
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("bad checkpoint header: ") + e.what());
    }
    throw std::runtime_error("unknown model kind '" + kind + "' in checkpoint");
  }();

  auto params = parameters(model);
  if (static_cast<std::size_t>(csv::parse_int(field("params"))) != params.size()) {
    throw std::runtime_error("checkpoint parameter count does not match its architecture");
  }
  std::string line;
  for (double& p : params) {
    if (!std::getline(in, line)) throw std::runtime_error("checkpoint has too few values");
    p = csv::parse_double(line);
  }
  return model;
}

AnyModel read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  return read_checkpoint(in);
}

}  // namespace eqnn
