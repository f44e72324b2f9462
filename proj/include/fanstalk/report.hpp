// fanstalk: report layer — deterministic JSON documents and a plain-text
// rendering of the same data for each pipeline (resolve, ideal, primes, fan,
// oracle).  All indices in reports are 1-based; integers are checked JSON
// numbers; rationals are "p/q" strings.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_REPORT_HPP
#define FANSTALK_REPORT_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fanstalk/arrangement.hpp"
#include "fanstalk/fantastack.hpp"
#include "fanstalk/ideals.hpp"
#include "fanstalk/oracle.hpp"
#include "fanstalk/parser.hpp"
#include "fanstalk/polyhedra.hpp"
#include "fanstalk/transform.hpp"
#include "fanstalk/version.hpp"

namespace fanstalk {

using Json = nlohmann::ordered_json;

/// FNV-1a 64-bit digest of the raw input bytes, as 16 hex digits.
inline std::string input_digest(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::string out(16, '0');
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

/// Checked conversion for JSON number fields.
inline std::int64_t json_int(const Int& x) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (x < lo || hi < x)
    throw Error(ErrorKind::NumberOverflow,
                "integer too large for a JSON number field");
  return x.convert_to<std::int64_t>();
}

inline Json json_vec(const IntVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(json_int(x));
  return a;
}

inline Json json_mat(const IntMat& rows) {
  Json a = Json::array();
  for (const IntVec& row : rows) a.push_back(json_vec(row));
  return a;
}

/// 1-based rendering of a 0-based index list.
inline Json json_indices(const std::vector<std::size_t>& idx) {
  Json a = Json::array();
  for (std::size_t i : idx) a.push_back(static_cast<std::int64_t>(i + 1));
  return a;
}

inline Json polyhedron_json(const NewtonPolyhedron& np) {
  Json j = Json::object();
  j["dim"] = static_cast<std::int64_t>(np.dim);
  j["vertices"] = json_mat(np.vertices);
  return j;
}

inline Json fan_json(const Fan& fan) {
  Json j = Json::object();
  j["dim"] = static_cast<std::int64_t>(fan.dim);
  j["rays"] = json_mat(fan.rays);
  Json cones = Json::array();
  for (const std::vector<std::size_t>& c : fan.cone_rays)
    cones.push_back(json_indices(c));
  j["maximal_cones"] = cones;
  if (!fan.vertices.empty() && fan.vertices.size() == fan.maximal.size())
    j["vertices"] = json_mat(fan.vertices);
  return j;
}

inline Json stacky_json(const StackyFan& sf) {
  Json j = Json::object();
  j["m"] = static_cast<std::int64_t>(sf.m());
  j["n"] = static_cast<std::int64_t>(sf.n());
  j["M"] = json_mat(sf.rows());
  j["rays_order"] = sf.names;
  Json cs = Json::array();
  for (const Chart& c : charts(sf)) {
    Json cj = Json::object();
    cj["cone"] = json_indices(c.cone_columns);
    cj["invertible"] = json_indices(c.invertible);
    cs.push_back(std::move(cj));
  }
  j["charts"] = cs;
  j["kernel"] = json_mat(kernel_lattice(sf).basis);
  return j;
}

inline Json forms_json(const SystemForms& sf) {
  Json a = Json::array();
  for (std::size_t i = 0; i < sf.forms.size(); ++i) {
    Json f = Json::object();
    f["member"] = static_cast<std::int64_t>(sf.sources[i] + 1);
    f["D"] = json_vec(sf.forms[i].d);
    f["lambda"] = rat_to_string(sf.forms[i].lambda);
    a.push_back(std::move(f));
  }
  return a;
}

inline Json poset_json(const IntersectionPoset& poset) {
  Json j = Json::object();
  Json nodes = Json::array();
  for (const PosetNode& n : poset.nodes) {
    Json nj = Json::object();
    nj["subset"] = json_indices(n.subset);
    nj["codim"] = static_cast<std::int64_t>(n.codim);
    nj["rank"] = static_cast<std::int64_t>(n.rank);
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = nodes;
  Json edges = Json::array();
  for (const auto& [lo, hi] : poset.edges) {
    Json e = Json::array();
    e.push_back(static_cast<std::int64_t>(lo + 1));
    e.push_back(static_cast<std::int64_t>(hi + 1));
    edges.push_back(std::move(e));
  }
  j["edges"] = edges;
  return j;
}

inline Json schedule_json(const BlowupSchedule& sched) {
  Json a = Json::array();
  for (const std::vector<std::size_t>& stage : sched.stages)
    a.push_back(json_indices(stage));
  return a;
}

inline Json decomposition_json(const ChartDecomposition& cd) {
  Json j = Json::object();
  j["order"] = json_indices(cd.order);
  Json ms = Json::array();
  for (const auto& s : cd.m_supports) ms.push_back(json_indices(s));
  j["M"] = ms;
  Json ns = Json::array();
  for (const auto& s : cd.n_supports) ns.push_back(json_indices(s));
  j["N"] = ns;
  Json strata = Json::array();
  for (const Stratum& s : cd.strata) {
    Json sj = Json::object();
    sj["monomial"] = json_indices(s.monomial);
    sj["residuals"] = json_indices(s.residuals);
    sj["empty"] = s.empty;
    sj["proper_transform"] = s.proper_transform;
    strata.push_back(std::move(sj));
  }
  j["strata"] = strata;
  return j;
}

// ---------------------------------------------------------------------------

/// Options shared by the pipelines (the CLI flags).
struct PipelineOptions {
  Int characteristic = 0;
  bool star_subdivide = false;
  bool oracle_verify = false;
  std::size_t max_subset_size = kMaxSubsetForms;
  std::string oracle_op = "all";
};

/// Outcome of a pipeline: the JSON report, its plain-text rendering, and the
/// process exit code (0 = all verdicts hold, 2 = a mathematical verdict
/// failed; parse/configuration errors are thrown instead).
struct RunResult {
  Json report;
  std::string text;
  int exit_code = 0;
};

namespace detail {

inline Json report_head(const std::string& command,
                        const std::string& input_text, const Int& p) {
  Json j = Json::object();
  j["schema"] = static_cast<std::int64_t>(kReportSchema);
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["input_hash"] = input_digest(input_text);
  j["characteristic"] = json_int(p);
  return j;
}

inline void echo_system(Json& j, const BinomialSystem& sys) {
  j["variables"] = sys.order.names;
  Json mem = Json::array();
  for (const Binomial& b : sys.members) mem.push_back(format_binomial(b));
  j["members"] = mem;
}

/// User-facing subset cap: never above the library hard cap.
inline void enforce_subset_cap(std::size_t count, std::size_t cap) {
  std::size_t lim = std::min(cap, kMaxSubsetForms);
  if (count > lim)
    throw Error(ErrorKind::TooManyMembers,
                "subset enumeration capped at " + std::to_string(lim) +
                    " members (got " + std::to_string(count) + ")");
}

inline bool any_pure_member(const BinomialSystem& sys) {
  for (const Binomial& b : sys.members)
    if (b.kind == BinomialKind::Pure) return true;
  return false;
}

inline std::size_t pure_member_count(const BinomialSystem& sys) {
  std::size_t c = 0;
  for (const Binomial& b : sys.members)
    if (b.kind == BinomialKind::Pure) ++c;
  return c;
}

inline Json check_entry(const std::string& name, const std::string& status,
                        const std::string& detail) {
  Json c = Json::object();
  c["name"] = name;
  c["status"] = status;
  c["detail"] = detail;
  return c;
}

/// Errors that make an oracle check inapplicable rather than failed.
inline bool skippable(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPure:
    case ErrorKind::EmptySystem:
    case ErrorKind::TooManyMembers:
    case ErrorKind::TooManyCoordinates:
    case ErrorKind::BadCharacteristic:
    case ErrorKind::FieldTooLarge:
      return true;
    default:
      return false;
  }
}

inline std::string vec_text(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

/// Runs one oracle check, translating inapplicability into a skip entry.
/// The body returns an empty string on success and a failure detail
/// otherwise.
template <typename Body>
inline void run_check(Json& checks, std::vector<std::string>& reasons,
                      const std::string& name, Body&& body) {
  try {
    std::string failure = body();
    if (failure.empty()) {
      checks.push_back(check_entry(name, "pass", ""));
    } else {
      checks.push_back(check_entry(name, "fail", failure));
      reasons.push_back("oracle check '" + name + "' failed: " + failure);
    }
  } catch (const Error& e) {
    if (!skippable(e.kind())) throw;
    checks.push_back(check_entry(name, "skip", e.message()));
  }
}

} // namespace detail

/// Independent-verifier battery for a system.  `op` selects one check
/// ("minkowski", "facets", "fan", "smoothness", "strata") or "all".
/// Failures are appended to `reasons`.
inline Json oracle_checks(const BinomialSystem& sys, const std::string& op,
                          const PipelineOptions& opts,
                          std::vector<std::string>& reasons) {
  Json checks = Json::array();
  auto wants = [&](const char* name) { return op == "all" || op == name; };

  if (wants("minkowski")) {
    detail::run_check(checks, reasons, "minkowski", [&]() -> std::string {
      NewtonPolyhedron np = newton_polyhedron(sys);
      IntMat brute = minkowski_vertices_bruteforce(sys);
      if (brute != np.vertices)
        return "vertex enumeration disagrees with the engine";
      return "";
    });
  }

  if (wants("facets")) {
    detail::run_check(checks, reasons, "facets", [&]() -> std::string {
      NewtonPolyhedron np = newton_polyhedron(sys);
      Fan fan = dual_fan(np);
      for (const IntVec& ray : fan.rays)
        if (!certify_facet(np, ray))
          return "ray " + detail::vec_text(ray) + " fails facet certification";
      return "";
    });
  }

  if (wants("fan")) {
    detail::run_check(checks, reasons, "fan", [&]() -> std::string {
      Fan fan = dual_fan(newton_polyhedron(sys));
      if (auto bad = fan_face_violation(fan))
        return "cones " + std::to_string(bad->first + 1) + " and " +
               std::to_string(bad->second + 1) + " do not meet in a face";
      if (auto gap = fan_coverage_gap(fan))
        return "point " + detail::vec_text(*gap) + " is not covered";
      return "";
    });
  }

  if (wants("smoothness")) {
    for (Int q : {Int(5), Int(7)}) {
      detail::run_check(
          checks, reasons, "smoothness(q=" + q.str() + ")",
          [&]() -> std::string {
            if (detail::any_pure_member(sys)) {
              std::vector<Int> primes = problematic_primes(sys);
              if (std::find(primes.begin(), primes.end(), q) != primes.end())
                throw Error(ErrorKind::BadCharacteristic,
                            "q = " + q.str() + " is a problematic prime");
            }
            StackyFan sf =
                build_stacky_fan(dual_fan(newton_polyhedron(sys)), sys.order);
            std::vector<PulledBinomial> pulled = pullback(sys, sf);
            for (const Chart& chart : charts(sf)) {
              std::vector<PulledBinomial> reduced;
              for (const PulledBinomial& pb : pulled)
                reduced.push_back(pb.is_pure() ? reduce_pure(pb, q) : pb);
              IntMat singular = smoothness_scan(reduced, chart, q);
              if (!singular.empty())
                return "singular point " + detail::vec_text(singular[0]) +
                       " in chart " + std::to_string(chart.cone_index + 1);
            }
            return "";
          });
    }
  }

  if (wants("strata")) {
    for (Int q : {Int(5), Int(7)}) {
      detail::run_check(
          checks, reasons, "strata(q=" + q.str() + ")", [&]() -> std::string {
            Fan pf = principalizing_fan(sys);
            StackyFan sf = build_stacky_fan(pf, sys.order);
            std::vector<PulledBinomial> pulled = pullback(sys, sf);
            for (const Chart& chart : charts(sf)) {
              ChartDecomposition cd = decompose(chart, pulled);
              if (auto bad = strata_cover_gap(cd, pulled, q))
                return "strata and preimage disagree at " +
                       detail::vec_text(*bad) + " in chart " +
                       std::to_string(chart.cone_index + 1);
            }
            return "";
          });
    }
  }

  (void)opts;
  return checks;
}

// ---------------------------------------------------------------------------
// Plain-text rendering: a YAML-like view of the same JSON document.

namespace detail {

inline bool scalar_like(const Json& v) {
  return !v.is_object() && !v.is_array();
}

inline bool inline_array(const Json& v) {
  if (!v.is_array()) return false;
  for (const Json& e : v)
    if (!scalar_like(e)) return false;
  return true;
}

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::string inline_text(const Json& arr) {
  std::string s = "[";
  bool first = true;
  for (const Json& e : arr) {
    if (!first) s += ", ";
    first = false;
    s += scalar_text(e);
  }
  return s + "]";
}

inline void render_lines(const Json& v, std::string& out, std::size_t indent);

inline void render_object(const Json& obj, std::string& out,
                          std::size_t indent) {
  std::string pad(indent, ' ');
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const Json& v = it.value();
    if (scalar_like(v))
      out += pad + it.key() + ": " + scalar_text(v) + "\n";
    else if (v.empty())
      out += pad + it.key() + ": " + (v.is_array() ? "[]" : "{}") + "\n";
    else if (inline_array(v))
      out += pad + it.key() + ": " + inline_text(v) + "\n";
    else {
      out += pad + it.key() + ":\n";
      render_lines(v, out, indent + 2);
    }
  }
}

inline void render_lines(const Json& v, std::string& out,
                         std::size_t indent) {
  if (v.is_object()) {
    render_object(v, out, indent);
    return;
  }
  std::string pad(indent, ' ');
  for (const Json& e : v) {
    if (scalar_like(e))
      out += pad + "- " + scalar_text(e) + "\n";
    else if (inline_array(e))
      out += pad + "- " + inline_text(e) + "\n";
    else {
      out += pad + "-\n";
      render_lines(e, out, indent + 2);
    }
  }
}

} // namespace detail

/// Deterministic plain-text rendering of a report.
inline std::string render_text(const Json& report) {
  std::string out;
  detail::render_lines(report, out, 0);
  return out;
}

namespace detail {

inline RunResult finish(Json&& j, std::vector<std::string>&& reasons) {
  Json verdict = Json::object();
  verdict["ok"] = reasons.empty();
  verdict["reasons"] = reasons;
  j["verdict"] = verdict;
  RunResult r;
  r.exit_code = reasons.empty() ? 0 : 2;
  r.text = render_text(j);
  r.report = std::move(j);
  return r;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Pipelines.

/// Full desingularization pipeline: Newton polyhedron, dual fan (optionally
/// star-subdivided), stacky fan, charts, pulled-back members reduced at the
/// working characteristic, schoen/normal-crossing verdicts, problematic
/// primes, and — when the characteristic is unproblematic — the arrangement
/// poset with its blowup schedule.
inline RunResult run_resolve(const std::string& input_text,
                             const PipelineOptions& opts) {
  BinomialSystem sys = parse_system(input_text);
  const Int& p = opts.characteristic;
  Json j = detail::report_head("resolve", input_text, p);
  detail::echo_system(j, sys);
  std::vector<std::string> reasons;

  NewtonPolyhedron np = newton_polyhedron(sys);
  Fan fan = dual_fan(np);
  if (opts.star_subdivide) {
    fan = star_subdivide_all_rays(fan);
    fan.vertices.clear();
    for (const Cone& c : fan.maximal)
      fan.vertices.push_back(vertex_for_cone(np, c));
  }
  j["newton_polyhedron"] = polyhedron_json(np);
  j["fan"] = fan_json(fan);

  StackyFan sf = build_stacky_fan(fan, sys.order);
  j["stacky_fan"] = stacky_json(sf);

  std::vector<Chart> chart_list = charts(sf);
  std::vector<PulledBinomial> pulled = pullback(sys, sf);

  bool any_pure = detail::any_pure_member(sys);
  std::vector<Int> primes;
  if (any_pure) {
    detail::enforce_subset_cap(detail::pure_member_count(sys),
                               opts.max_subset_size);
    primes = problematic_primes(sys);
  }
  Json primes_json = Json::array();
  for (const Int& q : primes) primes_json.push_back(json_int(q));
  bool p_problematic =
      p != 0 && std::find(primes.begin(), primes.end(), p) != primes.end();

  bool all_schoen = true;
  bool all_snc = true;
  Json transform = Json::array();
  for (const Chart& chart : chart_list) {
    Json cj = Json::object();
    cj["chart"] = static_cast<std::int64_t>(chart.cone_index + 1);
    std::vector<PulledBinomial> reduced;
    bool chart_schoen = true;
    Json members = Json::array();
    for (std::size_t i = 0; i < pulled.size(); ++i) {
      PulledBinomial pb =
          pulled[i].is_pure() ? reduce_pure(pulled[i], p) : pulled[i];
      Json mj = Json::object();
      mj["member"] = static_cast<std::int64_t>(i + 1);
      mj["kind"] = pb.is_pure() ? "pure" : "monomial";
      mj["W"] = json_vec(pb.w);
      if (pb.is_pure()) {
        mj["U"] = json_vec(pb.u);
        mj["V"] = json_vec(pb.v);
        mj["lambda"] = rat_to_string(pb.lambda);
        mj["multiplicity"] = json_int(pb.multiplicity);
        if (pb.irrational_root) mj["irrational_root"] = true;
      }
      bool sch = is_schoen(pb, chart);
      mj["schoen"] = sch;
      if (!sch) {
        chart_schoen = false;
        reasons.push_back("member " + std::to_string(i + 1) +
                          " is not schoen in chart " +
                          std::to_string(chart.cone_index + 1));
      }
      members.push_back(std::move(mj));
      reduced.push_back(std::move(pb));
    }
    cj["members"] = members;
    all_schoen = all_schoen && chart_schoen;

    if (chart_schoen) {
      detail::enforce_subset_cap(detail::pure_member_count(sys),
                                 opts.max_subset_size);
      SncReport snc = is_snc_chart(reduced, chart, p);
      cj["snc"] = snc.snc;
      if (!snc.snc) {
        Json fails = Json::array();
        for (const auto& subset : snc.failing_subsets)
          fails.push_back(json_indices(subset));
        cj["failing_subsets"] = fails;
        all_snc = false;
        reasons.push_back("chart " + std::to_string(chart.cone_index + 1) +
                          " fails simple normal crossings");
      }
    } else {
      cj["snc"] = false;
      all_snc = false;
    }
    cj["primes"] = primes_json;
    transform.push_back(std::move(cj));
  }
  j["transform"] = transform;
  j["primes"] = primes_json;
  j["schoen"] = all_schoen;
  j["snc"] = all_snc;
  if (!any_pure)
    j["note"] = "no pure members: the preimage is monomial and already "
                "normal crossings";
  if (p_problematic)
    reasons.push_back("characteristic " + p.str() +
                      " is a problematic prime of the system");

  if (any_pure && !p_problematic) {
    SystemForms forms = torus_forms(sys, p);
    detail::enforce_subset_cap(forms.forms.size(), opts.max_subset_size);
    IntersectionPoset poset = intersection_poset(forms.forms, p);
    Json aj = Json::object();
    aj["forms"] = forms_json(forms);
    aj["simple"] = poset.simple;
    aj["poset"] = poset_json(poset);
    if (poset.simple) {
      aj["schedule"] = schedule_json(hu_schedule(poset));
    } else {
      aj["schedule"] = nullptr;
      reasons.push_back("the arrangement is not simple at characteristic " +
                        p.str());
    }
    j["arrangement"] = aj;
  } else {
    j["arrangement"] = nullptr;
  }

  if (opts.oracle_verify)
    j["oracle"] = oracle_checks(sys, "all", opts, reasons);

  return detail::finish(std::move(j), std::move(reasons));
}

/// Stratification pipeline for the subscheme cut out by all members: the
/// principalizing fan, its stacky cover, the per-chart divisibility orders
/// and coset strata, and the simple-normal-position verdict.  Minimality of
/// the stratification is not certified.
inline RunResult run_ideal(const std::string& input_text,
                           const PipelineOptions& opts) {
  BinomialSystem sys = parse_system(input_text);
  const Int& p = opts.characteristic;
  Json j = detail::report_head("ideal", input_text, p);
  detail::echo_system(j, sys);
  std::vector<std::string> reasons;

  Fan pf = principalizing_fan(sys);
  if (opts.star_subdivide) pf = star_subdivide_all_rays(pf);
  j["fan"] = fan_json(pf);

  StackyFan sf = build_stacky_fan(pf, sys.order);
  j["stacky_fan"] = stacky_json(sf);

  std::vector<PulledBinomial> pulled = pullback(sys, sf);
  detail::enforce_subset_cap(sys.members.size(), opts.max_subset_size);

  bool all_snp = true;
  Json decomposition = Json::array();
  for (const Chart& chart : charts(sf)) {
    ChartDecomposition cd = decompose(chart, pulled);
    Json cj = Json::object();
    cj["chart"] = static_cast<std::int64_t>(chart.cone_index + 1);
    cj.update(decomposition_json(cd));
    SnpReport snp = simple_normal_position_check(cd, pulled, p);
    cj["simple_normal_position"] = snp.simple_normal_position;
    if (!snp.simple_normal_position) {
      Json fails = Json::array();
      for (const auto& [stratum, members] : snp.failures) {
        Json fj = Json::object();
        fj["stratum"] = static_cast<std::int64_t>(stratum + 1);
        fj["members"] = json_indices(members);
        fails.push_back(std::move(fj));
      }
      cj["failures"] = fails;
      all_snp = false;
      reasons.push_back("chart " + std::to_string(chart.cone_index + 1) +
                        " fails simple normal position");
    }
    decomposition.push_back(std::move(cj));
  }
  j["decomposition"] = decomposition;
  j["simple_normal_position"] = all_snp;
  j["minimality_checked"] = false;

  if (opts.oracle_verify)
    j["oracle"] = oracle_checks(sys, "strata", opts, reasons);

  return detail::finish(std::move(j), std::move(reasons));
}

/// Problematic-prime pipeline: the finite set of residue characteristics at
/// which some subset of the pure members drops exponent rank.
inline RunResult run_primes(const std::string& input_text,
                            const PipelineOptions& opts) {
  BinomialSystem sys = parse_system(input_text);
  const Int& p = opts.characteristic;
  Json j = detail::report_head("primes", input_text, p);
  detail::echo_system(j, sys);
  std::vector<std::string> reasons;

  std::vector<Int> primes;
  if (detail::any_pure_member(sys)) {
    detail::enforce_subset_cap(detail::pure_member_count(sys),
                               opts.max_subset_size);
    primes = problematic_primes(sys);
  } else {
    j["note"] = "no pure members: every characteristic is unproblematic";
  }
  Json pj = Json::array();
  for (const Int& q : primes) pj.push_back(json_int(q));
  j["primes"] = pj;

  if (p != 0 && std::find(primes.begin(), primes.end(), p) != primes.end())
    reasons.push_back("characteristic " + p.str() +
                      " is a problematic prime of the system");

  return detail::finish(std::move(j), std::move(reasons));
}

/// Fan pipeline: the Newton polyhedron and its dual fan (optionally
/// star-subdivided), with vertices attached to the maximal cones.
inline RunResult run_fan(const std::string& input_text,
                         const PipelineOptions& opts) {
  BinomialSystem sys = parse_system(input_text);
  Json j = detail::report_head("fan", input_text, opts.characteristic);
  detail::echo_system(j, sys);
  std::vector<std::string> reasons;

  NewtonPolyhedron np = newton_polyhedron(sys);
  Fan fan = dual_fan(np);
  if (opts.star_subdivide) {
    fan = star_subdivide_all_rays(fan);
    fan.vertices.clear();
    for (const Cone& c : fan.maximal)
      fan.vertices.push_back(vertex_for_cone(np, c));
  }
  j["newton_polyhedron"] = polyhedron_json(np);
  j["fan"] = fan_json(fan);

  if (opts.oracle_verify) {
    Json checks = Json::array();
    std::vector<std::string> subset = {"minkowski", "facets", "fan"};
    for (const std::string& op : subset) {
      Json got = oracle_checks(sys, op, opts, reasons);
      for (Json& c : got) checks.push_back(std::move(c));
    }
    j["oracle"] = checks;
  }

  return detail::finish(std::move(j), std::move(reasons));
}

/// Oracle pipeline: runs the independent verifier battery (or a single
/// check selected by `op`) against the engine.
inline RunResult run_oracle(const std::string& input_text,
                            const PipelineOptions& opts) {
  BinomialSystem sys = parse_system(input_text);
  Json j = detail::report_head("oracle", input_text, opts.characteristic);
  detail::echo_system(j, sys);
  j["op"] = opts.oracle_op;
  std::vector<std::string> reasons;
  j["checks"] = oracle_checks(sys, opts.oracle_op, opts, reasons);
  return detail::finish(std::move(j), std::move(reasons));
}

} // namespace fanstalk

#endif // FANSTALK_REPORT_HPP
