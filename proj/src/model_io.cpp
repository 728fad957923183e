#include <fstream>
#include <sstream>

#include "dpf/error.hpp"
#include "dpf/model.hpp"

namespace dpf {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::kParse, "model line " + std::to_string(line) + ": " + what);
}

std::vector<int> ints(const std::string& value, int line) {
  std::istringstream is(value);
  std::vector<int> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      parse_fail(line, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) parse_fail(line, "expected an integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

FibrationModel parse_model(std::string_view text) {
  std::optional<int> degree;
  std::optional<BaseKind> base;
  std::optional<Twists> twists;
  std::optional<std::vector<int>> constants;
  std::optional<std::pair<std::string, int>> equation;
  std::vector<std::pair<std::string, int>> terms;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) parse_fail(lineno, "expected 'key: value'");
    const std::string key = trim(std::string_view(line).substr(0, colon));
    const std::string value = trim(std::string_view(line).substr(colon + 1));
    if (key == "degree") {
      const auto v = ints(value, lineno);
      if (v.size() != 1 || (v[0] != 1 && v[0] != 2)) parse_fail(lineno, "degree must be 1 or 2");
      degree = v[0];
    } else if (key == "base") {
      if (value == "P1") base = BaseKind::kProjectiveLine;
      else if (value == "germ") base = BaseKind::kGerm;
      else parse_fail(lineno, "base must be P1 or germ");
    } else if (key == "twists") {
      const auto v = ints(value, lineno);
      if (v.size() != 4) parse_fail(lineno, "twists needs four integers");
      twists = Twists{v[0], v[1], v[2], v[3]};
    } else if (key == "constants") {
      constants = ints(value, lineno);
    } else if (key == "equation") {
      if (equation) parse_fail(lineno, "duplicate equation");
      equation = {value, lineno};
    } else if (key == "term") {
      terms.emplace_back(value, lineno);
    } else {
      parse_fail(lineno, "unknown key '" + key + "'");
    }
  }
  if (!degree) parse_fail(lineno, "missing degree");
  if (!base) parse_fail(lineno, "missing base");
  if (!equation && terms.empty()) parse_fail(lineno, "missing equation");

  FibrationModel model;
  model.weights = WeightSystem::for_degree(*degree);
  model.base = *base;
  model.twists = twists;
  if (constants) {
    const auto& c = *constants;
    if (*degree == 1 && c.size() == 4) {
      model.constants = StructureConstants::d1(c[0], c[1], c[2], c[3]);
    } else if (*degree == 2 && c.size() == 3) {
      model.constants = StructureConstants::d2(c[0], c[1], c[2]);
    } else {
      parse_fail(lineno, "constants need 4 values for degree 1, 3 for degree 2");
    }
  }
  BigradedPoly sum(model.weights);
  for (const auto& [t, line] : terms) {
    BigradedPoly p(model.weights);
    try {
      p = parse_poly(t, model.weights);
    } catch (const Error& e) {
      parse_fail(line, e.what());
    }
    if (p.size() != 1) parse_fail(line, "a term line holds exactly one monomial");
    sum = sum + p;
  }
  if (equation) {
    try {
      model.equation = parse_poly(equation->first, model.weights);
    } catch (const Error& e) {
      parse_fail(equation->second, e.what());
    }
    if (!terms.empty() && !(sum == model.equation)) {
      parse_fail(equation->second, "term lines do not add up to the equation");
    }
  } else {
    model.equation = sum;
  }
  return model;
}

std::string serialize_model(const FibrationModel& model) {
  std::ostringstream os;
  os << "degree: " << model.degree() << "\n";
  os << "base: " << base_kind_name(model.base) << "\n";
  if (model.twists) {
    const auto& e = *model.twists;
    os << "twists: " << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << e[3] << "\n";
  }
  if (model.constants) {
    os << "constants:";
    for (int v : model.constants->values()) os << ' ' << v;
    os << "\n";
  }
  os << "equation: " << to_text(model.equation) << "\n";
  for (const auto& [m, c] : model.equation.terms()) {
    os << "term: " << to_text(BigradedPoly::monomial(model.weights, m, c)) << "\n";
  }
  return os.str();
}

FibrationModel load_model(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot open model file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_model(ss.str());
}

}  // namespace dpf
