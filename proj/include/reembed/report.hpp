#ifndef REEMBED_REPORT_HPP
#define REEMBED_REPORT_HPP

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reembed/border_basis.hpp"
#include "reembed/cotangent.hpp"
#include "reembed/groebner.hpp"
#include "reembed/job.hpp"
#include "reembed/linear_gfan.hpp"
#include "reembed/reembed.hpp"
#include "reembed/separating.hpp"
#include "reembed/text.hpp"

namespace reembed {

inline constexpr int report_schema_version = 1;

enum ExitCode : int { exit_ok = 0, exit_error = 1, exit_inconclusive = 2 };

/// Result of running a job: the JSON document, its plain-text rendering and
/// the process exit code.
struct JobReport {
  nlohmann::ordered_json json;
  std::string text;
  int exit_code = exit_ok;

  std::string render(OutputFormat f) const { return f == OutputFormat::json ? json.dump(2) + "\n" : text; }
};

namespace detail {

using Json = nlohmann::ordered_json;
using Q = Rational;

inline std::vector<std::string> names_of(const Ring& r, const std::vector<Indet>& v) {
  std::vector<std::string> out;
  for (Indet i : v) out.push_back(r.name(i));
  return out;
}

inline std::string tuple_text(const Ring& r, const std::vector<Indet>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + r.name(v[k]);
  return s + ")";
}

inline std::string list_text(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k];
  return s;
}

inline std::vector<std::string> polys_text(const std::vector<Poly<Q>>& fs, const Ring& r,
                                           const TermOrdering* o = nullptr) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(to_string(f, r, o));
  return out;
}

inline Json ordering_json(const std::string& name, const TermOrdering& o) {
  Json m = Json::array();
  for (const auto& row : o.rows()) m.push_back(row);
  return Json{{"name", name}, {"matrix", m}};
}

inline std::string ordering_name_for(const std::vector<Indet>& z, const Ring& r) {
  return "elim" + tuple_text(r, z);
}

inline const char* to_string(AbortReason a) {
  switch (a) {
    case AbortReason::none: return "none";
    case AbortReason::step_limit: return "step-limit";
    case AbortReason::deadline: return "deadline";
    default: return "cancelled";
  }
}

inline GBOptions gb_options(const JobSpec& job) {
  GBOptions g;
  if (job.budget) g.step_limit = *job.budget;
  g.sugar = job.sugar;
  return g;
}

inline SearchOptions search_options(const JobSpec& job) {
  SearchOptions o;
  o.gb = gb_options(job);
  o.threads = job.threads.value_or(1);
  o.all = job.all;
  if (job.wall_seconds)
    o.wall_budget = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(*job.wall_seconds));
  return o;
}

inline Json classes_json(const CotangentClasses& c, const Ring& r) {
  Json proper = Json::array();
  for (const auto& cls : c.proper) proper.push_back(names_of(r, cls));
  return Json{{"trivial", names_of(r, c.trivial)}, {"basic", names_of(r, c.basic)}, {"proper", proper}};
}

inline void classes_text(std::ostream& os, const CotangentClasses& c, const Ring& r) {
  os << "trivial class (" << c.trivial.size() << "): " << list_text(names_of(r, c.trivial)) << "\n";
  os << "basic indeterminates (" << c.basic.size() << "): " << list_text(names_of(r, c.basic)) << "\n";
  os << "proper classes (" << c.proper.size() << "):\n";
  for (const auto& cls : c.proper) os << "  {" << list_text(names_of(r, cls)) << "}\n";
}

inline Json reembedding_json(const Reembedding<Q>& e, const std::vector<Poly<Q>>& gens, const Ring& r) {
  Json subst = Json::object();
  for (const auto& [z, h] : e.substitution) subst[r.name(z)] = to_string(h, r);
  return Json{{"z", names_of(r, e.z)},
              {"y", names_of(r, e.y)},
              {"substitution", subst},
              {"elimination_gens", polys_text(e.elimination_gens, r, &e.certificate.ordering)},
              {"optimal", e.optimal},
              {"optimal_certified", certify_optimal(e, gens)},
              {"affine_cell", e.affine_cell ? Json(*e.affine_cell) : Json(nullptr)},
              {"certificate",
               {{"ordering", ordering_name_for(e.z, r)},
                {"basis_size", e.certificate.basis.size()},
                {"steps", e.certificate.steps}}}};
}

inline void reembedding_text(std::ostream& os, const Reembedding<Q>& e, const std::vector<Poly<Q>>& gens,
                             const Ring& r) {
  os << "Z = " << tuple_text(r, e.z) << ", Y = " << tuple_text(r, e.y) << "\n";
  for (const auto& [z, h] : e.substitution) os << "  " << r.name(z) << " -> " << to_string(h, r) << "\n";
  if (e.elimination_gens.empty()) {
    os << "  elimination ideal: 0\n";
  } else {
    os << "  elimination ideal generated by:\n";
    for (const auto& g : e.elimination_gens) os << "    " << to_string(g, r, &e.certificate.ordering) << "\n";
  }
  os << "  optimal: " << (certify_optimal(e, gens) ? "yes" : "no") << ", affine cell: "
     << (e.affine_cell ? (*e.affine_cell ? "yes" : "no") : "inconclusive") << "\n";
}

inline Json search_json(const SearchResult<Q>& res, const std::vector<Poly<Q>>& gens, const Ring& r) {
  Json trace = Json::array();
  for (const auto& t : res.trace)
    trace.push_back(Json{{"z", names_of(r, t.z)},
                         {"verdict", reembed::to_string(t.verdict)},
                         {"linear_leading_terms", names_of(r, t.linear_leading_terms)},
                         {"steps", t.steps}});
  Json found = Json::array();
  for (const auto& e : res.found) found.push_back(reembedding_json(e, gens, r));
  Json unverified = Json::array();
  for (const auto& z : res.unverified) unverified.push_back(names_of(r, z));
  return Json{{"lin_dim", res.lin_dim},
              {"status", reembed::to_string(res.status)},
              {"candidates", res.candidates.size()},
              {"used_fan_candidates", res.used_fan_candidates},
              {"trace", trace},
              {"results", found},
              {"unverified", unverified}};
}

inline void search_text(std::ostream& os, const SearchResult<Q>& res, const std::vector<Poly<Q>>& gens,
                        const Ring& r) {
  os << "linear part dimension: " << res.lin_dim << "\n";
  os << "candidates: " << res.candidates.size() << (res.used_fan_candidates ? " (from the linear fan)" : "") << "\n";
  for (const auto& t : res.trace) {
    os << "  " << tuple_text(r, t.z) << ": " << reembed::to_string(t.verdict);
    if (t.verdict == Verdict::no) os << ", linear leading terms " << tuple_text(r, t.linear_leading_terms);
    os << "\n";
  }
  os << "status: " << reembed::to_string(res.status) << "\n";
  for (const auto& e : res.found) reembedding_text(os, e, gens, r);
  if (!res.unverified.empty()) {
    os << "unverified candidates:\n";
    for (const auto& z : res.unverified) os << "  " << tuple_text(r, z) << "\n";
  }
}

inline int search_exit(const SearchResult<Q>& res) {
  return res.status == SearchStatus::inconclusive ? exit_inconclusive : exit_ok;
}

inline Json header(const JobSpec& job, const Ring& r) {
  return Json{{"schema", report_schema_version}, {"command", reembed::to_string(job.command)}, {"ring", r.names()}};
}

inline JobReport run_gb(const JobSpec& job) {
  const std::size_t n = job.ring.arity();
  JobReport rep;
  std::ostringstream os;
  rep.json = header(job, job.ring);
  GBOptions opt = gb_options(job);
  std::string name = job.ordering_name;
  TermOrdering o = job.ordering.value_or(TermOrdering::degrevlex(n));
  if (job.z && !job.ordering) {
    o = TermOrdering::elimination(*job.z, n);
    name = ordering_name_for(*job.z, job.ring);
  }
  std::optional<SeparationCheck<Q>> chk;
  GBResult<Q> gb = [&] {
    if (!job.z) return buchberger(job.gens, o, opt);
    chk = check_Z_separating(job.gens, *job.z, n, opt, &o);
    return chk->gb;
  }();
  rep.json["ordering"] = ordering_json(name, o);
  rep.json["status"] = gb.complete() ? "complete" : "aborted";
  rep.json["abort_reason"] = to_string(gb.reason);
  rep.json["steps"] = gb.steps;
  rep.json["basis"] = polys_text(gb.basis, job.ring, &o);
  std::vector<std::string> lts;
  for (const auto& t : gb.leading_terms()) lts.push_back(term_to_string(t, job.ring));
  rep.json["leading_terms"] = lts;
  os << "ring: " << list_text(job.ring.names()) << "\n";
  os << "ordering: " << name << "\n";
  os << "status: " << (gb.complete() ? "complete" : std::string("aborted (") + to_string(gb.reason) + ")")
     << ", steps: " << gb.steps << "\n";
  os << "reduced Groebner basis (" << gb.basis.size() << "):\n";
  for (const auto& s : polys_text(gb.basis, job.ring, &o)) os << "  " << s << "\n";
  if (!gb.complete()) rep.exit_code = exit_inconclusive;
  if (chk) {
    rep.json["separating"] = Json{{"z", names_of(job.ring, chk->z)},
                                  {"verdict", reembed::to_string(chk->verdict)},
                                  {"linear_leading_terms", names_of(job.ring, chk->linear_leading_terms)}};
    os << "Z-separating for " << tuple_text(job.ring, chk->z) << ": " << reembed::to_string(chk->verdict) << "\n";
    os << "linear leading terms: " << tuple_text(job.ring, chk->linear_leading_terms) << "\n";
  }
  rep.text = os.str();
  return rep;
}

inline JobReport run_gfan_linear(const JobSpec& job) {
  const std::size_t n = job.ring.arity();
  JobReport rep;
  std::ostringstream os;
  rep.json = header(job, job.ring);
  std::vector<Poly<Q>> forms;
  for (const auto& f : job.gens)
    if (!f.is_zero()) forms.push_back(f);
  auto fan = gfan_linear(forms, n);
  Json gbs = Json::array();
  os << "ring: " << list_text(job.ring.names()) << "\n";
  os << "linear forms: " << forms.size() << (fan.input_reduced ? " (linearly dependent, reduced)" : "") << "\n";
  os << "marked reduced Groebner bases: " << fan.gbs.size() << "\n";
  for (std::size_t k = 0; k < fan.gbs.size(); ++k) {
    Json pairs = Json::array();
    std::string line;
    for (const auto& p : fan.gbs[k].pairs) {
      std::string form = to_string_marked(p.form, Term::indet(n, p.marker), job.ring);
      pairs.push_back(Json{{"marker", job.ring.name(p.marker)}, {"form", form}});
      line += (line.empty() ? "" : ", ") + ("(" + job.ring.name(p.marker) + ", " + form + ")");
    }
    gbs.push_back(pairs);
    os << "  " << k + 1 << ": {" << line << "}\n";
  }
  rep.json["rank"] = fan.bases.empty() ? 0 : fan.bases.front().size();
  rep.json["input_reduced"] = fan.input_reduced;
  rep.json["fan"] = gbs;
  rep.text = os.str();
  return rep;
}

inline void cotangent_sections(Json& j, std::ostream& os, const std::vector<Poly<Q>>& lin, const Ring& r) {
  const std::size_t n = r.arity();
  bool binomial = all_binomial<Q>(lin);
  auto cls = cotangent_classes(lin, n);
  auto s = sigma_leading_S(cls, TermOrdering::degrevlex(n));
  j["lin_dim"] = lin.size();
  j["linear_part"] = polys_text(lin, r);
  j["binomial"] = binomial;
  j["classes"] = classes_json(cls, r);
  j["leading_set_degrevlex"] = names_of(r, s);
  j["ltgfan_size"] = binomial ? Json(ltgfan_size(cls)) : Json(nullptr);
  os << "linear part dimension: " << lin.size() << (binomial ? " (binomial)" : "") << "\n";
  for (const auto& f : lin) os << "  " << to_string(f, r) << "\n";
  classes_text(os, cls, r);
  os << "leading set under degrevlex (" << s.size() << "): " << list_text(names_of(r, s)) << "\n";
  if (binomial) os << "leading-term sets of the linear fan: " << ltgfan_size(cls) << "\n";
}

inline JobReport run_cotangent(const JobSpec& job) {
  JobReport rep;
  std::ostringstream os;
  rep.json = header(job, job.ring);
  os << "ring: " << list_text(job.ring.names()) << "\n";
  cotangent_sections(rep.json, os, linear_part_of_ideal<Q>(job.gens, job.ring.arity()), job.ring);
  rep.text = os.str();
  return rep;
}

inline SearchResult<Q> given_tuple(const JobSpec& job) {
  const std::size_t n = job.ring.arity();
  auto lin = linear_part_of_ideal<Q>(job.gens, n);
  const TermOrdering* o = job.ordering ? &*job.ordering : nullptr;
  auto chk = check_Z_separating<Q>(job.gens, *job.z, n, gb_options(job), o);
  SearchResult<Q> res;
  res.lin_dim = lin.size();
  res.candidates = {chk.z};
  res.trace.push_back({chk.z, chk.verdict, chk.linear_leading_terms, chk.gb.steps, chk.gb.reason});
  if (chk.verdict == Verdict::yes) {
    res.found.push_back(detail::make_reembedding(std::move(chk), n, lin.size()));
    res.found.back().affine_cell = certify_affine_cell<Q>(res.found.back(), job.gens);
    res.status = SearchStatus::found;
  } else if (chk.verdict == Verdict::no) {
    res.status = SearchStatus::not_found;
  } else {
    res.status = SearchStatus::inconclusive;
    res.unverified.push_back(chk.z);
  }
  return res;
}

inline JobReport run_reembed(const JobSpec& job) {
  const std::size_t n = job.ring.arity();
  JobReport rep;
  std::ostringstream os;
  rep.json = header(job, job.ring);
  SearchResult<Q> res;
  std::string alg;
  if (job.z) {
    alg = "given";
    res = given_tuple(job);
  } else if (job.alg == SearchAlg::gfan) {
    alg = "gfan";
    std::size_t s = job.size ? *job.size : linear_part_of_ideal<Q>(job.gens, n).size();
    res = find_reembedding_via_gfan<Q>(job.gens, n, s, search_options(job));
    rep.json["size"] = s;
  } else {
    alg = "cotangent";
    res = find_reembedding_via_cotangent<Q>(job.gens, n, job.optimal_only, search_options(job));
    rep.json["optimal_only"] = job.optimal_only;
  }
  rep.json["alg"] = alg;
  Json body = search_json(res, job.gens, job.ring);
  for (auto& [k, v] : body.items()) rep.json[k] = v;
  os << "ring: " << list_text(job.ring.names()) << "\n";
  os << "algorithm: " << alg << "\n";
  search_text(os, res, job.gens, job.ring);
  rep.exit_code = search_exit(res);
  rep.text = os.str();
  return rep;
}

inline JobReport run_bbs(const JobSpec& job) {
  JobReport rep;
  std::ostringstream os;
  BorderBasisScheme<Q> s(order_ideal(job.terms));
  const Ring& x = job.ring;
  const Ring& c = s.ring();
  auto terms_text = [&](const std::vector<Term>& ts) {
    std::vector<std::string> out;
    for (const auto& t : ts) out.push_back(term_to_string(t, x));
    return out;
  };
  auto ri = rim_interior(s.order_ideal());
  auto pick = [&](const std::vector<std::size_t>& idx) {
    std::vector<Term> ts;
    for (auto i : idx) ts.push_back(s.order_ideal()[i]);
    return terms_text(ts);
  };
  auto gens = s.neighbour_generators();
  std::vector<Poly<Q>> ideal;
  Json gj = Json::array();
  std::size_t nd = 0, ar = 0;
  for (const auto& p : s.pairs()) (p.kind == NeighbourKind::next_door ? nd : ar)++;
  for (const auto& g : gens) {
    const auto& p = s.pairs()[g.pair];
    std::string label = (p.kind == NeighbourKind::next_door ? "ND(" : "AR(") + std::to_string(p.j + 1) + "," +
                        std::to_string(p.j2 + 1) + ")";
    gj.push_back(Json{{"pair", label}, {"entry", g.entry + 1}, {"poly", to_string(g.poly, c)}});
    ideal.push_back(g.poly);
  }
  Json arrows = Json::object();
  for (Indet v = 0; v < c.arity(); ++v) arrows[c.name(v)] = s.arrow_degree(v);
  auto report = verify_structure(s);

  rep.json = header(job, x);
  rep.json["order_ideal"] = terms_text(s.order_ideal().terms());
  rep.json["border"] = terms_text(s.border());
  rep.json["mu"] = s.mu();
  rep.json["nu"] = s.nu();
  rep.json["c_indeterminates"] = c.arity();
  rep.json["expected_dimension"] = s.expected_dimension();
  rep.json["rim"] = pick(ri.rim);
  rep.json["interior"] = pick(ri.interior);
  rep.json["neighbour_pairs"] = Json{{"next_door", nd}, {"across_rim", ar}};
  rep.json["generators"] = gj;
  rep.json["arrow_degrees"] = arrows;

  os << "order ideal (mu = " << s.mu() << "): " << list_text(terms_text(s.order_ideal().terms())) << "\n";
  os << "border (nu = " << s.nu() << "): " << list_text(terms_text(s.border())) << "\n";
  os << "indeterminates c_ij: " << c.arity() << ", expected dimension: " << s.expected_dimension() << "\n";
  os << "rim: " << list_text(pick(ri.rim)) << "\n";
  os << "interior: " << list_text(pick(ri.interior)) << "\n";
  os << "neighbour pairs: " << nd << " next-door, " << ar << " across-the-rim\n";
  os << "neighbour generators (" << gens.size() << "):\n";
  for (const auto& g : gj) os << "  " << g["pair"].get<std::string>() << ": " << g["poly"].get<std::string>() << "\n";
  cotangent_sections(rep.json, os, linear_part_of_ideal<Q>(ideal, c.arity()), c);
  rep.json["structure"] = Json{{"arrow_homogeneous", report.arrow_homogeneous},
                               {"linear_parts", report.linear_parts},
                               {"quadratic_parts", report.quadratic_parts},
                               {"basic_are_rim", report.basic_are_rim},
                               {"proper_classes_meet_rim", report.proper_classes_meet_rim},
                               {"failures", report.failures}};
  os << "structure checks: " << (report.ok() ? "pass" : "FAIL") << "\n";
  for (const auto& f : report.failures) os << "  " << f << "\n";
  if (!report.ok()) rep.exit_code = exit_error;
  if (job.chain_reembed) {
    auto res = find_reembedding_via_cotangent<Q>(ideal, c.arity(), job.optimal_only, search_options(job));
    Json r = search_json(res, ideal, c);
    r["optimal_only"] = job.optimal_only;
    rep.json["reembed"] = r;
    os << "re-embedding search (cotangent" << (job.optimal_only ? ", optimal only" : "") << "):\n";
    search_text(os, res, ideal, c);
    if (rep.exit_code == exit_ok) rep.exit_code = search_exit(res);
  }
  rep.text = os.str();
  return rep;
}

}  // namespace detail

/// Runs a validated job. Library errors propagate as exceptions.
inline JobReport run_job(const JobSpec& job) {
  switch (job.command) {
    case Command::gb: return detail::run_gb(job);
    case Command::gfan_linear: return detail::run_gfan_linear(job);
    case Command::cotangent: return detail::run_cotangent(job);
    case Command::reembed: return detail::run_reembed(job);
    default: return detail::run_bbs(job);
  }
}

}  // namespace reembed

#endif  // REEMBED_REPORT_HPP
