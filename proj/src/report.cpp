#include "dpf/report.hpp"

#include "json.hpp"

#include <random>
#include <sstream>

#include "dpf/error.hpp"
#include "dpf/fibertrans.hpp"
#include "dpf/intersect.hpp"
#include "dpf/linsys.hpp"
#include "dpf/rigidity.hpp"

namespace dpf {

using nlohmann::json;

namespace {

Report emit(Format fmt, const std::string& text, const json& j, bool ok = true) {
  if (fmt == Format::kJson) return {j.dump(2) + "\n", ok};
  return {text, ok};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string point_text(const Point& p) {
  std::string out = "(";
  for (int i = 0; i < 5; ++i) {
    if (i) out += ',';
    out += p[i].get_str();
  }
  return out + ")";
}

json point_json(const Point& p) {
  json j = json::array();
  for (const auto& c : p) j.push_back(c.get_str());
  return j;
}

std::string constants_header(const StructureConstants& sc) {
  return "constants: degree=" + std::to_string(sc.degree) + " values=" + sc.to_string() + "\n";
}

json constants_json(const StructureConstants& sc) {
  return {{"degree", sc.degree}, {"values", sc.values()}};
}

std::string classify_line(const RigidityVerdict& v) {
  std::string out = status_name(v.status);
  out += " (";
  if (v.case_id) out += "case " + *v.case_id + "; ";
  return out + v.citation + ")";
}

}  // namespace

StructureConstants parse_constants(int degree, const std::string& csv) {
  if (degree != 1 && degree != 2) {
    throw Error(ErrorCode::kInvalidArgument, "degree must be 1 or 2");
  }
  std::vector<int> v;
  for (const auto& part : split(csv, ',')) {
    const std::string s = trim(part);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) {
      throw Error(ErrorCode::kInvalidArgument, "malformed constants list '" + csv + "'");
    }
    v.push_back(value);
  }
  const std::size_t want = degree == 1 ? 4 : 3;
  if (v.size() != want) {
    throw Error(ErrorCode::kInvalidArgument, "degree " + std::to_string(degree) + " needs " +
                                                 std::to_string(want) + " constants");
  }
  const auto sc = degree == 1 ? StructureConstants::d1(v[0], v[1], v[2], v[3])
                              : StructureConstants::d2(v[0], v[1], v[2]);
  require_valid(sc);
  return sc;
}

Point parse_point(const std::string& csv) {
  const auto parts = split(csv, ',');
  if (parts.size() != 5) {
    throw Error(ErrorCode::kInvalidArgument, "a point needs 5 coordinates (t,x,y,z,w)");
  }
  Point p;
  for (int i = 0; i < 5; ++i) {
    try {
      p[i] = Rational(trim(parts[i]));
      p[i].canonicalize();
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "malformed coordinate '" + parts[i] + "'");
    }
  }
  return p;
}

Report validate_report(const FibrationModel& model, Format fmt) {
  const auto rep = validate(model);
  std::string text = "degree: " + std::to_string(model.degree()) + "\n";
  text += std::string("base: ") + base_kind_name(model.base) + "\n";
  text += "equation: " + to_text(model.equation) + "\n";
  json j{{"degree", model.degree()},
         {"base", base_kind_name(model.base)},
         {"equation", to_text(model.equation)},
         {"valid", rep.valid()},
         {"violations", rep.violations},
         {"details", rep.details},
         {"notes", rep.notes}};
  text += std::string("status: ") + (rep.valid() ? "valid" : "invalid") + "\n";
  for (const auto& d : rep.details) text += "violation: " + d + "\n";
  for (const auto& n : rep.notes) text += "note: " + n + "\n";
  if (rep.valid() && model.base == BaseKind::kProjectiveLine) {
    try {
      const auto sc = infer_constants(model);
      text += "constants: " + sc.to_string() + "\n";
      j["constants"] = sc.values();
    } catch (const Error& e) {
      text += std::string("constants: ") + error_code_name(e.code()) + ": " + e.what() + "\n";
      j["constants"] = nullptr;
    }
  }
  return emit(fmt, text, j, rep.valid());
}

Report table_report(const StructureConstants& sc, Format fmt) {
  const auto t = intersection_table(sc);
  std::string text = constants_header(sc);
  json rows = json::array();
  for (const auto& row : t.rows()) {
    rows.push_back(row);
    // "lhs = formula = value" prints as "lhs = value  [formula]"
    const auto first = row.find(" = ");
    const auto last = row.rfind(" = ");
    if (first != std::string::npos && first != last) {
      text += row.substr(0, first) + " = " + row.substr(last + 3) + "  [" +
              row.substr(first + 3, last - first - 3) + "]\n";
    } else {
      text += row + "\n";
    }
  }
  const bool k2 = k2_condition(sc);
  text += std::string("K^2-condition: ") + (k2 ? "holds" : "fails") + "\n";
  json j{{"constants", constants_json(sc)},
         {"rows", rows},
         {"minus_k_cubed", t.minus_k_cubed},
         {"k_squared", {{"s0", t.k_squared.sigma.get_str()}, {"f", t.k_squared.phi.get_str()}}},
         {"k2_condition", k2}};
  return emit(fmt, text, j);
}

Report classify_report(const StructureConstants& sc, Format fmt) {
  const auto v = classify(sc);
  json j{{"status", status_name(v.status)},
         {"case_id", v.case_id ? json(*v.case_id) : json(nullptr)},
         {"citation", v.citation}};
  return emit(fmt, classify_line(v) + "\n", j);
}

namespace {

Report linsys_body(std::string header, json j, const ConjectureStatus& st, Format fmt) {
  json rows = json::array();
  for (const auto& r : st.rows) {
    const std::string bc = r.base_component ? to_text(*r.base_component) : "none";
    header += "n=" + std::to_string(r.n) + " h0=" + std::to_string(r.dim_h0) +
              " base_component=" + bc + "\n";
    rows.push_back({{"n", r.n},
                    {"h0", r.dim_h0},
                    {"base_component", r.base_component ? json(bc) : json(nullptr)}});
  }
  header += std::string("verdict=") + verdict_name(st.verdict) + "\n";
  j["rows"] = rows;
  j["verdict"] = verdict_name(st.verdict);
  return emit(fmt, header, j);
}

}  // namespace

Report linsys_report(const StructureConstants& sc, int n_max, Format fmt) {
  return linsys_body(constants_header(sc) + "system: |n(-K) - F|\n",
                     json{{"constants", constants_json(sc)}}, conjecture_status(sc, n_max), fmt);
}

Report linsys_report(const FibrationModel& model, int n_max, Format fmt) {
  if (!model.twists || model.base != BaseKind::kProjectiveLine) {
    throw Error(ErrorCode::kInvalidModel, "linsys needs a P1 model with twists");
  }
  const auto& tw = *model.twists;
  const std::vector<int> twv(tw.begin(), tw.end());
  const std::string header = "model: degree=" + std::to_string(model.degree()) +
                             " twists=" + join(twv) + "\nsystem: |n(-K) - F|\n";
  return linsys_body(header, json{{"degree", model.degree()}, {"twists", twv}},
                     conjecture_status(model, n_max), fmt);
}

Report catalog_report(const StructureConstants& sc, Format fmt) {
  const auto v = classify(sc);
  const auto records = mori_structures(sc);
  const auto checks = verify_catalog(sc);
  std::string text = constants_header(sc) + "classification: " + classify_line(v) + "\n";
  json jr = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    text += "record " + std::to_string(i + 1) + ": " + r.description + "\n";
    text += std::string("  link: ") + (r.link ? link_type_name(*r.link) : "none") + "\n";
    text += std::string("  status: ") + (r.conjectural ? "conjectural" : "proven") + "\n";
    json facts = json::array();
    for (const auto& f : r.facts) {
      json jf{{"name", f.name},
              {"value", f.value.get_str()},
              {"source", f.source == FactSource::kCheckable ? "checkable" : "literature"}};
      text += "  fact: " + f.name + " = " + f.value.get_str();
      if (f.source == FactSource::kLiterature) {
        text += " [literature]\n";
      } else {
        for (const auto& c : checks) {
          if (c.record == r.description && c.name == f.name) {
            text += " [checkable, recomputed " + c.computed.get_str() + (c.ok ? ", ok]" : ", MISMATCH]");
            jf["recomputed"] = c.computed.get_str();
            jf["ok"] = c.ok;
            all_ok = all_ok && c.ok;
            break;
          }
        }
        text += "\n";
      }
      facts.push_back(jf);
    }
    if (!r.note.empty()) text += "  note: " + r.note + "\n";
    jr.push_back({{"description", r.description},
                  {"link_type", r.link ? json(link_type_name(*r.link)) : json(nullptr)},
                  {"conjectural", r.conjectural},
                  {"facts", facts},
                  {"note", r.note}});
  }
  text += std::string("facts-verified: ") + (all_ok ? "true" : "false") + "\n";
  json j{{"constants", constants_json(sc)},
         {"status", status_name(v.status)},
         {"case_id", v.case_id ? json(*v.case_id) : json(nullptr)},
         {"records", jr},
         {"facts_verified", all_ok}};
  return emit(fmt, text, j);
}

Report transform_report(const FibrationModel& v, const FibrationModel& u,
                        const std::array<int, 4>& forward, Format fmt) {
  if (v.degree() != u.degree()) {
    throw Error(ErrorCode::kInvalidArgument, "models have different degrees");
  }
  const auto map = solve_constraints(v.degree(), forward);
  const std::vector<int> fw(map.forward.begin(), map.forward.end());
  const std::vector<int> bw(map.backward.begin(), map.backward.end());
  const auto rep = uniqueness_check(v, u, map);
  const auto& fwd = rep.forward;
  const bool matches = fwd.integral && proportional_up_to_t_power(fwd.source.equation, v.equation);

  std::string text = "map: degree=" + std::to_string(map.degree) + " forward=" + join(fw) +
                     " backward=" + join(bw) + " m=" + std::to_string(map.m) + "\n";
  text += "transported: " + to_text(fwd.source.equation) + "\n";
  text += std::string("integral: ") + (fwd.integral ? "true" : "false") + "\n";
  text += std::string("matches-V: ") + (matches ? "true" : "false") + "\n";
  json j{{"map", {{"degree", map.degree}, {"forward", fw}, {"backward", bw}, {"m", map.m}}},
         {"transported", to_text(fwd.source.equation)},
         {"integral", fwd.integral},
         {"matches_v", matches}};
  if (fwd.forced_singularity) {
    const auto& fs = *fwd.forced_singularity;
    text += std::string("forced-point: ") + side_name(fs.side) + " " + point_text(fs.point) +
            " jacobian=vanishes\n";
    j["forced_point"] = {{"side", side_name(fs.side)}, {"point", point_json(fs.point)}};
  } else {
    text += "forced-point: none\n";
    j["forced_point"] = nullptr;
  }
  text += "singular-in-V: " + (rep.singular_in_v ? point_text(*rep.singular_in_v) : "none") + "\n";
  text += "singular-in-U: " + (rep.singular_in_u ? point_text(*rep.singular_in_u) : "none") + "\n";
  j["singular_in_v"] = rep.singular_in_v ? point_json(*rep.singular_in_v) : json(nullptr);
  j["singular_in_u"] = rep.singular_in_u ? point_json(*rep.singular_in_u) : json(nullptr);
  text += std::string("verdict: ") + verdict_name(rep.verdict) + "\n";
  j["verdict"] = verdict_name(rep.verdict);
  std::string iso;
  try {
    const auto s = find_isomorphism(v, u);
    iso = s ? s->to_string() : "none";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSearchBoundExceeded) throw;
    iso = "inconclusive";
  }
  text += "substitution-U-to-V: " + iso + "\n";
  j["substitution_u_to_v"] = iso;
  return emit(fmt, text, j);
}

Report smooth_point_report(const FibrationModel& model, const ChartPoint& pt, Format fmt) {
  const bool smooth = is_smooth_at(model, pt);
  std::string text = "point: " + to_string(pt) + "\n";
  text += std::string("smooth: ") + (smooth ? "true" : "false") + "\n";
  json j{{"chart", std::string(1, var_name(pt.chart))},
         {"point", point_json(pt.coords)},
         {"smooth", smooth}};
  if (!smooth) {
    const auto r = local_report(model, pt);
    text += "local-equation: " + to_text(r.local_equation) + "\n";
    text += "quadratic-rank: " + std::to_string(r.quadratic_rank) + "\n";
    text += "corank: " + std::to_string(r.corank) + "\n";
    j["local_equation"] = to_text(r.local_equation);
    j["quadratic_rank"] = r.quadratic_rank;
    j["corank"] = r.corank;
    if (r.brieskorn_exponents) {
      text += "brieskorn: " + join(*r.brieskorn_exponents) +
              (r.brieskorn_on_slice ? " (generic slice)" : "") + "\n";
      j["brieskorn_exponents"] = *r.brieskorn_exponents;
      j["brieskorn_on_slice"] = r.brieskorn_on_slice;
    } else {
      text += "brieskorn: none\n";
      j["brieskorn_exponents"] = nullptr;
    }
    text += "milnor: " + (r.milnor_number ? std::to_string(*r.milnor_number) : "none") + "\n";
    text += "hint: " + r.label_hint.value_or("none") + "\n";
    j["milnor_number"] = r.milnor_number ? json(*r.milnor_number) : json(nullptr);
    j["label_hint"] = r.label_hint ? json(*r.label_hint) : json(nullptr);
  }
  return emit(fmt, text, j);
}

Report smooth_fp_report(const FibrationModel& model, const std::vector<std::uint64_t>& primes,
                        const FpSearchOptions& options, Format fmt) {
  std::string text;
  json searches = json::array();
  bool none_found = true;
  std::string plist;
  for (auto p : primes) {
    const auto found = singular_search_fp(model, p, options);
    none_found = none_found && found.empty();
    plist += (plist.empty() ? "" : ",") + std::to_string(p);
    text += "p=" + std::to_string(p) + " t-values=" +
            (options.t_values ? std::to_string(options.t_values->size()) : std::string("all")) +
            " mode=" + (options.fiber_only ? "fiber" : "threefold") +
            " singular-points=" + std::to_string(found.size()) + "\n";
    json pts = json::array();
    for (const auto& f : found) {
      std::string s = std::string("  chart ") + var_name(f.chart) + ": (";
      json c = json::array();
      for (int i = 0; i < 5; ++i) {
        s += (i ? "," : "") + std::to_string(f.coords[i]);
        c.push_back(f.coords[i]);
      }
      text += s + ")\n";
      pts.push_back({{"chart", std::string(1, var_name(f.chart))}, {"coords", c}});
    }
    searches.push_back({{"p", p}, {"points", pts}});
  }
  if (none_found) text += "no singular points found over F_p for p in {" + plist + "}\n";
  json j{{"fiber_only", options.fiber_only}, {"searches", searches}, {"none_found", none_found}};
  return emit(fmt, text, j);
}

Report sweep_report(const SweepOptions& opt, Format fmt) {
  if (opt.bound < 0 || opt.bound > 12) {
    throw Error(ErrorCode::kInvalidArgument, "sweep bound must lie in [0, 12]");
  }
  if (opt.n_max < 1) throw Error(ErrorCode::kInvalidArgument, "n_max must be >= 1");
  std::string text = "sweep degree=" + std::to_string(opt.degree) +
                     " bound=" + std::to_string(opt.bound) + " n_max=" + std::to_string(opt.n_max) +
                     "\n";
  json rows = json::array();
  int agree = 0;
  int disagree = 0;
  int na = 0;
  for (const auto& sc : enumerate_constants(opt.degree, opt.bound)) {
    const auto v = classify(sc);
    const bool k2 = k2_condition(sc);
    std::string conj = "n/a";
    std::string flag = "n/a";
    if (v.status != RigidityStatus::kOutOfClassification) {
      const auto st = conjecture_status(sc, opt.n_max);
      conj = verdict_name(st.verdict);
      const auto want = v.status == RigidityStatus::kNonRigid
                            ? ConjectureVerdict::kSupportsNonRigidity
                            : ConjectureVerdict::kSupportsRigidity;
      const bool ok = st.verdict == want;
      flag = ok ? "true" : "false";
      ok ? ++agree : ++disagree;
    } else {
      ++na;
    }
    text += "constants=" + sc.to_string() + " classify=" + status_name(v.status) +
            " k2=" + (k2 ? "true" : "false") + " conjecture=" + conj + " agree=" + flag + "\n";
    const bool applicable = flag != "n/a";
    rows.push_back({{"constants", sc.values()},
                    {"classify", status_name(v.status)},
                    {"k2", k2},
                    {"conjecture", applicable ? json(conj) : json(nullptr)},
                    {"agree", applicable ? json(flag == "true") : json(nullptr)}});
  }
  text += "summary rows=" + std::to_string(rows.size()) + " agree=" + std::to_string(agree) +
          " disagree=" + std::to_string(disagree) + " n/a=" + std::to_string(na) + "\n";
  json j{{"degree", opt.degree},
         {"bound", opt.bound},
         {"n_max", opt.n_max},
         {"rows", rows},
         {"agree", agree},
         {"disagree", disagree},
         {"not_applicable", na}};
  if (opt.uniqueness_trials > 0) {
    std::mt19937_64 rng(opt.seed);
    int integral = 0;
    int violations = 0;
    for (int i = 0; i < opt.uniqueness_trials; ++i) {
      const auto inst = random_instance(opt.degree, rng);
      try {
        if (transport(inst.map, inst.target, true).integral) ++integral;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInternalInconsistency) throw;
        ++integral;
        ++violations;
      }
    }
    text += "uniqueness trials=" + std::to_string(opt.uniqueness_trials) +
            " seed=" + std::to_string(opt.seed) + " integral=" + std::to_string(integral) +
            " violations=" + std::to_string(violations) + "\n";
    j["uniqueness"] = {{"trials", opt.uniqueness_trials},
                       {"seed", opt.seed},
                       {"integral", integral},
                       {"violations", violations}};
  }
  return emit(fmt, text, j);
}

}  // namespace dpf
