#include "aggan/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "aggan/error.hpp"

namespace aggan {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

Hidden hidden_from_name(const std::string& name, double& slope) {
  if (name == "relu") return Hidden::Relu;
  if (name == "tanh") return Hidden::Tanh;
  if (name.rfind("leaky-relu(", 0) == 0 && name.back() == ')') {
    slope = std::stod(name.substr(11, name.size() - 12));
    return Hidden::LeakyRelu;
  }
  throw IoError("unknown hidden activation '" + name + "'");
}

Output output_from_name(const std::string& name) {
  if (name == "sigmoid") return Output::Sigmoid;
  if (name == "identity") return Output::Identity;
  if (name == "softmax") return Output::Softmax;
  throw IoError("unknown output activation '" + name + "'");
}

}  // namespace

std::string spec_header(const MLPSpec& spec) {
  std::ostringstream os;
  os << "aggan-params v1 ";
  for (std::size_t i = 0; i < spec.widths.size(); ++i) {
    if (i) os << ',';
    os << spec.widths[i];
  }
  os << ' ';
  for (const Hidden& h : spec.hidden)
    os << hidden_name(h, spec.leaky_slope) << ',';
  os << output_name(spec.output);
  return os.str();
}

MLPSpec spec_from_header(const std::string& header) {
  std::istringstream is(header);
  std::string magic, version, widths_str, acts_str;
  is >> magic >> version >> widths_str >> acts_str;
  if (magic != "aggan-params" || version != "v1")
    throw IoError("not an aggan-params v1 checkpoint: '" + header + "'");
  MLPSpec spec;
  for (const std::string& w : split(widths_str, ','))
    spec.widths.push_back(std::stol(w));
  const auto acts = split(acts_str, ',');
  if (acts.size() != spec.widths.size() - 1)
    throw IoError("checkpoint header lists " + std::to_string(acts.size()) +
                  " activations for " + std::to_string(spec.widths.size() - 1) +
                  " layers");
  for (std::size_t i = 0; i + 1 < acts.size(); ++i)
    spec.hidden.push_back(hidden_from_name(acts[i], spec.leaky_slope));
  spec.output = output_from_name(acts.back());
  spec.validate();
  return spec;
}

void save_params(const std::string& path, const MLPSpec& spec,
                 const ParamSet& params) {
  check_shapes(spec, params);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << spec_header(spec) << '\n';
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const auto& layer = params.layers[l];
    out << ParamSet::array_name(static_cast<Index>(l), true) << ' '
        << layer.W.rows() << ' ' << layer.W.cols();
    for (Index i = 0; i < layer.W.rows(); ++i)
      for (Index j = 0; j < layer.W.cols(); ++j)
        out << ' ' << fmt17(layer.W(i, j));
    out << '\n';
    out << ParamSet::array_name(static_cast<Index>(l), false) << ' '
        << layer.b.size() << " 1";
    for (Index i = 0; i < layer.b.size(); ++i)
      out << ' ' << fmt17(layer.b(i));
    out << '\n';
  }
  if (!out) throw IoError("short write to '" + path + "'");
}

ParamSet load_params(const std::string& path, const MLPSpec& spec) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string header;
  std::getline(in, header);
  const MLPSpec stored = spec_from_header(header);
  if (stored != spec)
    throw IoError("checkpoint '" + path + "' was written for " +
                  spec_header(stored) + ", requested " + spec_header(spec));

  ParamSet params;
  params.layers.resize(spec.widths.size() - 1);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string name;
    Index rows, cols;
    is >> name >> rows >> cols;
    if (name.size() < 2 || (name[0] != 'W' && name[0] != 'b'))
      throw IoError("bad array name '" + name + "' in '" + path + "'");
    const Index layer = std::stol(name.substr(1));
    if (layer < 0 || layer >= static_cast<Index>(params.layers.size()))
      throw IoError("array '" + name + "' out of range in '" + path + "'");
    Matrix values(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j)
        if (!(is >> values(i, j)))
          throw IoError("array '" + name + "' in '" + path +
                        "' is shorter than its declared shape");
    if (name[0] == 'W')
      params.layers[layer].W = values;
    else
      params.layers[layer].b = values.col(0);
  }
  check_shapes(spec, params);
  return params;
}

}  // namespace aggan
