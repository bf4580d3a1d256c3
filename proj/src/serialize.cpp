#include "projlat/serialize.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace projlat {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) parse_error(std::string("expected an object holding \"") + name + "\"");
  const auto it = j.find(name);
  if (it == j.end()) parse_error(std::string("missing field \"") + name + "\"");
  return *it;
}

std::vector<int> dims_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_error("block_dims must be a non-empty array");
  std::vector<int> dims;
  for (const auto& d : j) {
    if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > 4096) {
      parse_error("block_dims entries must be positive integers");
    }
    dims.push_back(d.get<int>());
  }
  return dims;
}

double number(const Json& j) {
  if (!j.is_number()) parse_error("matrix entry is not a number");
  return j.get<double>();
}

}  // namespace

Json to_json(const Algebra& a) { return Json{{"block_dims", a.block_dims()}}; }

Json to_json(const Element& x) {
  Json blocks = Json::array();
  for (const auto& b : x.blocks()) {
    Json flat = Json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      for (Eigen::Index c = 0; c < b.cols(); ++c) flat.push_back(Json::array({b(r, c).real(), b(r, c).imag()}));
    blocks.push_back(std::move(flat));
  }
  return Json{{"block_dims", x.algebra().block_dims()}, {"blocks", std::move(blocks)}};
}

Algebra algebra_from_json(const Json& j) {
  if (j.is_array()) return Algebra(dims_from_json(j));
  return Algebra(dims_from_json(field(j, "block_dims")));
}

Element element_from_json(const Json& j) {
  const Algebra alg = algebra_from_json(j);
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array() || blocks.size() != alg.num_blocks()) parse_error("\"blocks\" does not match block_dims");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const int n = alg.block_dim(k);
    const Json& flat = blocks[k];
    if (!flat.is_array() || flat.size() != static_cast<std::size_t>(n) * n) {
      std::ostringstream os;
      os << "block " << k << " must hold " << n * n << " entries";
      parse_error(os.str());
    }
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const Json& e = flat[static_cast<std::size_t>(r * n + c)];
        if (e.is_number()) {
          m(r, c) = number(e);
        } else if (e.is_array() && e.size() == 2) {
          m(r, c) = Complex(number(e[0]), number(e[1]));
        } else {
          parse_error("matrix entries must be [re, im] pairs");
        }
      }
    }
    out.push_back(std::move(m));
  }
  return Element(alg, std::move(out));
}

Projection projection_from_json(const Json& j) { return Projection(element_from_json(j)); }

Algebra parse_algebra_spec(const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::Usage, "empty algebra spec");

  const bool inline_spec = s.find_first_not_of("0123456789,+[]Mm") == std::string::npos;
  if (!inline_spec) return algebra_from_json(read_json_file(spec));

  std::vector<int> dims;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw Error(ErrorCode::Usage, "malformed algebra spec '" + spec + "'");
    dims.push_back(std::stoi(token));
    token.clear();
  };
  for (char c : s) {
    if (c == '[' || c == ']' || c == 'M' || c == 'm') continue;
    if (c == ',' || c == '+') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  for (int d : dims)
    if (d < 1 || d > 4096) throw Error(ErrorCode::Usage, "block sizes must be in [1, 4096]");
  return Algebra(dims);
}

Measure measure_from_json(const Json& j, const Algebra& fallback) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) parse_error("\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "density") return make_density_measure(element_from_json(field(j, "T")));
  if (k == "tracial") return make_tracial_measure(j.contains("block_dims") ? algebra_from_json(j) : fallback);
  if (k == "m2_nonlinear") {
    const Json& seed = field(j, "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
      parse_error("\"seed\" must be a non-negative integer");
    }
    return make_m2_nonlinear_measure(seed.get<std::uint64_t>());
  }
  parse_error("unknown measure kind '" + k + "'");
}

LatticeMorphism morphism_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) parse_error("\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "unitary") {
    bool transpose = false;
    if (j.contains("transpose")) {
      if (!j["transpose"].is_boolean()) parse_error("\"transpose\" must be a boolean");
      transpose = j["transpose"].get<bool>();
    }
    std::vector<std::size_t> perm;
    if (j.contains("block_permutation")) {
      for (const auto& v : j["block_permutation"]) {
        if (!v.is_number_unsigned()) parse_error("block_permutation entries must be non-negative integers");
        perm.push_back(v.get<std::size_t>());
      }
    }
    return make_morphism_from_unitary(element_from_json(field(j, "U")), transpose, std::move(perm));
  }
  if (k == "fault") {
    LatticeMorphism base = morphism_from_json(field(j, "base"));
    return make_fault_morphism(std::move(base), projection_from_json(field(j, "break_at")));
  }
  parse_error("unknown morphism kind '" + k + "'");
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << origin << ":" << line << ":" << col << ": " << e.what();
    throw Error(ErrorCode::Parse, os.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace projlat
