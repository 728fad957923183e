#include "dpf/singular.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "dpf/error.hpp"

namespace dpf {

namespace {

int idx(Var v) { return static_cast<int>(v); }

void require_chart(const WeightSystem& ws, const ChartPoint& pt) {
  if (pt.chart == Var::t || ws.weight(pt.chart) != 1) {
    throw Error(ErrorCode::kInvalidChart,
                std::string("chart coordinate ") + var_name(pt.chart) + " does not have weight 1");
  }
  if (pt.coords[idx(pt.chart)] != 1) {
    throw Error(ErrorCode::kInvalidChart,
                std::string("chart coordinate ") + var_name(pt.chart) + " must equal 1");
  }
}

std::vector<Var> local_vars(const ChartPoint& pt) {
  std::vector<Var> out;
  for (Var v : kAllVars) {
    if (v != pt.chart) out.push_back(v);
  }
  return out;
}

}  // namespace

ChartPoint chart_point(const WeightSystem& ws, Var chart, const Point& coords) {
  ChartPoint p{chart, coords};
  p.coords[idx(chart)] = 1;
  require_chart(ws, p);
  return p;
}

std::string to_string(const ChartPoint& p) {
  std::string out = std::string("chart ") + var_name(p.chart) + ": (t,x,y,z,w) = (";
  for (int i = 0; i < 5; ++i) {
    if (i) out += ',';
    out += p.coords[i].get_str();
  }
  return out + ")";
}

bool is_smooth_at(const FibrationModel& model, const ChartPoint& pt) {
  require_chart(model.weights, pt);
  return !jacobian_vanishes(model.equation, pt.coords);
}

// ---- F_p search --------------------------------------------------------------

std::vector<FpChartPoint> singular_search_fp(const FibrationModel& model, std::uint64_t p,
                                             const FpSearchOptions& options) {
  const PrimeField field(p);
  std::vector<BigradedPoly> polys{model.equation};
  for (Var v : kAllVars) {
    if (v == Var::t && options.fiber_only) continue;
    polys.push_back(partial_derivative(model.equation, v));
  }
  // Reducing every coefficient up front surfaces bad denominators before
  // any thread starts.
  for (const auto& q : polys) {
    for (const auto& [m, c] : q.terms()) {
      if (!field.reduce(c)) {
        throw Error(ErrorCode::kDenominatorNotInvertible,
                    "coefficient " + c.get_str() + " does not reduce mod " + std::to_string(p));
      }
      if (m[Var::t] < 0) {
        throw Error(ErrorCode::kInvalidArgument, "negative t-power in a search model");
      }
    }
  }
  std::vector<std::uint64_t> ts;
  if (options.t_values) {
    for (auto t : *options.t_values) ts.push_back(t % p);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  } else {
    for (std::uint64_t t = 0; t < p; ++t) ts.push_back(t);
  }
  std::vector<Var> charts{Var::x, Var::y};
  if (model.degree() == 2) charts.push_back(Var::z);

  std::vector<FpChartPoint> found;
  std::mutex mu;
  auto scan_t = [&](std::uint64_t t) {
    std::vector<FpChartPoint> local;
    for (std::size_t ci = 0; ci < charts.size(); ++ci) {
      const Var chart = charts[ci];
      // Coordinates before the chart variable are 0, the chart is 1, and
      // the remaining fiber coordinates range over F_p.
      std::vector<Var> free;
      for (std::size_t k = ci + 1; k < 4; ++k) free.push_back(kFiberVars[k]);
      std::uint64_t total = 1;
      for (std::size_t k = 0; k < free.size(); ++k) total *= p;
      for (std::uint64_t n = 0; n < total; ++n) {
        FpPoint pt{};
        pt[idx(Var::t)] = t;
        pt[idx(chart)] = 1;
        std::uint64_t rest = n;
        for (Var v : free) {
          pt[idx(v)] = rest % p;
          rest /= p;
        }
        bool singular = true;
        for (const auto& q : polys) {
          if (evaluate_mod(q, pt, field) != 0) {
            singular = false;
            break;
          }
        }
        if (singular) local.push_back({chart, pt});
      }
    }
    std::lock_guard lock(mu);
    found.insert(found.end(), local.begin(), local.end());
  };

  unsigned n_threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(ts.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < ts.size(); i += n_threads) scan_t(ts[i]);
    });
  }
  for (auto& th : pool) th.join();
  std::sort(found.begin(), found.end());
  return found;
}

// ---- local data --------------------------------------------------------------

namespace {

BigradedPoly local_expansion(const BigradedPoly& f, const ChartPoint& pt) {
  const auto& ws = f.weights();
  BigradedPoly out(ws);
  for (const auto& [m, c] : f.terms()) {
    BigradedPoly term = BigradedPoly::constant(ws, c);
    for (Var v : kAllVars) {
      const int e = m[v];
      if (e == 0) continue;
      if (v == pt.chart) continue;  // chart coordinate is 1
      if (e < 0) throw Error(ErrorCode::kInvalidArgument, "negative t-power in a local model");
      const Rational& a = pt.coords[idx(v)];
      const BigradedPoly shifted =
          BigradedPoly::variable(ws, v) + BigradedPoly::constant(ws, a);
      term = term * shifted.pow(static_cast<unsigned>(e));
    }
    out = out + term;
  }
  return out;
}

int rank_of(std::vector<std::vector<Rational>> a) {
  int rank = 0;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (int i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[rank][c];
      for (int k = c; k < cols; ++k) a[i][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Exponents of p as a sum of one pure power per variable, in the order of
// vars; nullopt for any other shape.
std::optional<std::vector<int>> pure_powers(const BigradedPoly& p, const std::vector<Var>& vars) {
  std::vector<int> exps(vars.size(), 0);
  for (const auto& [m, c] : p.terms()) {
    int hit = -1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (m[vars[i]] == 0) continue;
      if (hit >= 0) return std::nullopt;
      hit = static_cast<int>(i);
    }
    if (hit < 0 || exps[hit] != 0) return std::nullopt;
    for (Var v : kAllVars) {
      if (v != vars[hit] && m[v] != 0) return std::nullopt;
    }
    exps[hit] = m[vars[hit]];
  }
  if (std::ranges::find(exps, 0) != exps.end()) return std::nullopt;
  return exps;
}

long milnor(const std::vector<int>& exps) {
  long mu = 1;
  for (int a : exps) mu *= a - 1;
  return mu;
}

std::optional<std::string> slice_hint(std::vector<int> e) {
  std::sort(e.begin(), e.end());
  if (e.size() != 3 || e[0] != 2) return std::nullopt;
  if (e[1] == 2) return "slice type A" + std::to_string(e[2] - 1);
  if (e[1] == 3 && e[2] >= 3 && e[2] <= 5) return "slice type E" + std::to_string(e[2] + 3);
  return std::nullopt;
}

}  // namespace

SingularityReport local_report(const FibrationModel& model, const ChartPoint& pt) {
  if (is_smooth_at(model, pt)) {
    throw Error(ErrorCode::kNotSingular, "the equation is smooth at " + to_string(pt));
  }
  SingularityReport rep;
  rep.local_equation = local_expansion(model.equation, pt);
  const auto vars = local_vars(pt);

  std::vector<std::vector<Rational>> hess(vars.size(), std::vector<Rational>(vars.size(), 0));
  for (const auto& [m, c] : rep.local_equation.terms()) {
    if (m.total_degree() != 2) continue;
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      for (int k = 0; k < m[vars[i]]; ++k) at.push_back(i);
    }
    if (at[0] == at[1]) {
      hess[at[0]][at[0]] += 2 * c;
    } else {
      hess[at[0]][at[1]] += c;
      hess[at[1]][at[0]] += c;
    }
  }
  rep.quadratic_rank = rank_of(hess);
  rep.corank = static_cast<int>(vars.size()) - rep.quadratic_rank;

  if (auto full = pure_powers(rep.local_equation, vars)) {
    std::vector<int> e = *full;
    std::sort(e.begin(), e.end());
    rep.milnor_number = milnor(e);
    if (e[0] == 2 && e[1] == 2 && e[2] == 2) rep.label_hint = "A" + std::to_string(e[3] - 1);
    rep.brieskorn_exponents = std::move(e);
    return rep;
  }

  // Generic slice t = l(fiber coordinates): the slice part must be a
  // Brieskorn form, and each t-term must land strictly above its Newton
  // diagonal after the substitution.
  std::vector<Var> slice_vars;
  for (Var v : vars) {
    if (v != Var::t) slice_vars.push_back(v);
  }
  BigradedPoly::TermMap slice_terms;
  std::vector<std::pair<Monomial, Rational>> t_terms;
  for (const auto& [m, c] : rep.local_equation.terms()) {
    if (m[Var::t] == 0) {
      slice_terms.emplace(m, c);
    } else {
      t_terms.emplace_back(m, c);
    }
  }
  const auto slice = pure_powers(BigradedPoly(model.weights, slice_terms), slice_vars);
  if (!slice) return rep;
  const int a_max = *std::ranges::max_element(*slice);
  for (const auto& [m, c] : t_terms) {
    Rational wt = make_rational(m[Var::t], a_max);
    for (std::size_t i = 0; i < slice_vars.size(); ++i) {
      wt += make_rational(m[slice_vars[i]], (*slice)[i]);
    }
    if (wt <= 1) return rep;
  }
  std::vector<int> e = *slice;
  std::sort(e.begin(), e.end());
  rep.brieskorn_on_slice = true;
  rep.milnor_number = milnor(e);
  rep.label_hint = slice_hint(e);
  rep.brieskorn_exponents = std::move(e);
  return rep;
}

}  // namespace dpf
