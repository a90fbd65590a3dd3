#pragma once

#include <tropfan/complex.hpp>
#include <tropfan/duality.hpp>
#include <tropfan/io.hpp>
#include <tropfan/matroid.hpp>
#include <tropfan/parallel.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tropfan {

namespace cli {

struct Options {
  std::string fan_path, matroid_path, ring, output;
  std::optional<std::size_t> p;
  std::optional<FaceId> face;
  bool json = false;
  unsigned threads = 0;
};

struct Outcome {
  int code = 0;
  Json results = Json::object();
  Json witnesses = Json::array();
  std::string text;
  std::optional<std::string> document;  // fan document produced by star-export and bergman
};

inline Json group_json(const GroupPresentation& g) {
  Json t = Json::array();
  for (const auto& f : g.invariant_factors) t.push_back(detail::integer_json(f));
  return Json{{"free_rank", g.free_rank}, {"torsion", t}, {"group", g.to_string()}};
}

inline Json face_json(const Fan& fan, FaceId f) {
  return Json{{"face", f}, {"rays", fan.face(f).rays}, {"dim", fan.face(f).dim}};
}

inline WeightedFan load_fan(const Options& o) {
  if (o.fan_path.empty()) throw InputError("--fan is required");
  std::optional<RingTag> ring;
  if (!o.ring.empty()) ring = RingTag::parse(o.ring);
  return parse_fan_file(o.fan_path, ring);
}

inline std::vector<std::size_t> degrees(const Options& o, std::size_t d) {
  if (o.p) {
    if (*o.p > d) throw InputError("--p " + std::to_string(*o.p) + " out of range 0.." + std::to_string(d));
    return {*o.p};
  }
  std::vector<std::size_t> all;
  for (std::size_t p = 0; p <= d; ++p) all.push_back(p);
  return all;
}

inline Outcome cmd_balance(const Options& o) {
  const auto wf = load_fan(o);
  Outcome r;
  const auto defect = balancing_defect(wf);
  r.results["balanced"] = !defect;
  std::ostringstream t;
  if (defect) {
    r.witnesses.push_back(face_json(wf.fan(), *defect));
    r.witnesses.back()["reason"] = "boundary of the fundamental chain is nonzero";
    t << "balanced: no (boundary nonzero at face " << *defect << " " << format_set(wf.fan().face(*defect).rays) << ")\n";
    r.code = 1;
  } else {
    const bool ub = is_uniquely_balanced(wf);
    r.results["uniquely_balanced"] = ub;
    t << "balanced: yes\nuniquely balanced: " << (ub ? "yes" : "no") << "\n";
  }
  r.text = t.str();
  return r;
}

inline Outcome cmd_homology(const Options& o) {
  const auto wf = load_fan(o);
  const Fan& fan = wf.fan();
  const FaceId gamma = o.face.value_or(Fan::vertex());
  fan.face(gamma);
  Outcome r;
  std::ostringstream t;
  Json groups = Json::array();
  t << "Borel-Moore homology over " << wf.ring().to_string();
  if (gamma != Fan::vertex()) t << " of the star of face " << gamma << " " << format_set(fan.face(gamma).rays);
  t << "\n";
  for (std::size_t p : degrees(o, fan.dim())) {
    const auto h = homology(star_bm_complex(fan, gamma, p, wf.ring()));
    for (int q = h.min_degree; q <= h.max_degree(); ++q) {
      Json g = group_json(h.at(q).group);
      g["p"] = p;
      g["q"] = q;
      groups.push_back(g);
      t << "  H_" << q << "(F_" << p << ") = " << h.at(q).group.to_string() << "\n";
    }
  }
  r.results["face"] = gamma;
  r.results["groups"] = groups;
  r.text = t.str();
  return r;
}

inline Outcome cmd_cohomology(const Options& o) {
  const auto wf = load_fan(o);
  const Fan& fan = wf.fan();
  Outcome r;
  std::ostringstream t;
  Json plain = Json::array(), compact = Json::array();
  t << "cohomology over " << wf.ring().to_string() << "\n";
  for (std::size_t p : degrees(o, fan.dim())) {
    const auto h = homology(cochain_complex(fan, p, wf.ring()));
    const auto hc = homology(compact_cochain_complex(fan, p, wf.ring()));
    for (int q = 0; q <= static_cast<int>(fan.dim()); ++q) {
      Json g = group_json(h.at(q).group), gc = group_json(hc.at(q).group);
      g["p"] = gc["p"] = p;
      g["q"] = gc["q"] = q;
      plain.push_back(g);
      compact.push_back(gc);
      t << "  H^" << q << "(F^" << p << ") = " << h.at(q).group.to_string() << "    H_c^" << q << "(F^" << p
        << ") = " << hc.at(q).group.to_string() << "\n";
    }
  }
  r.results["cohomology"] = plain;
  r.results["compact_support"] = compact;
  r.text = t.str();
  return r;
}

inline void describe_star(const Fan& fan, const StarReport& s, Outcome& r, std::ostream& t) {
  for (const auto& c : s.checks) {
    if (c.passed) continue;
    Json w = face_json(fan, s.face);
    w["check"] = c.kind;
    w["p"] = c.p;
    if (c.kind == "vanishing") w["q"] = c.q;
    w["detail"] = c.detail;
    r.witnesses.push_back(w);
    t << "  face " << s.face << " " << format_set(fan.face(s.face).rays) << ": ";
    if (c.kind == "vanishing")
      t << "H_" << c.q << "(F_" << c.p << ") = " << c.detail << " is nonzero\n";
    else
      t << "cap product at p=" << c.p << " is not an isomorphism (" << c.detail << ")\n";
  }
}

inline Outcome cmd_tpd(const Options& o) {
  const auto wf = load_fan(o);
  const Fan& fan = wf.fan();
  const auto rep = is_tpd(wf);
  const StarReport& s = rep.faces.front();
  Outcome r;
  std::ostringstream t;
  Json h0 = Json::array(), top = Json::array();
  t << "tropical Poincare duality over " << wf.ring().to_string() << ": " << (rep.verdict ? "yes" : "no") << "\n";
  t << "  p   H^0(F^p)   H_" << fan.dim() << "(F_{d-p})\n";
  for (std::size_t p = 0; p <= fan.dim(); ++p) {
    h0.push_back(group_json(s.cohomology[p]));
    top.push_back(group_json(s.top[p]));
    t << "  " << p << "   " << s.cohomology[p].to_string() << "   " << s.top[p].to_string() << "\n";
  }
  Json vanish = Json::array();
  for (bool v : s.vanishing) vanish.push_back(v);
  r.results["verdict"] = rep.verdict;
  r.results["H0"] = h0;
  r.results["HBM_top"] = top;
  r.results["vanishing"] = vanish;
  describe_star(fan, s, r, t);
  r.text = t.str();
  r.code = rep.verdict ? 0 : 1;
  return r;
}

inline Outcome cmd_local_tpd(const Options& o) {
  const auto wf = load_fan(o);
  const Fan& fan = wf.fan();
  const auto rep = is_local_tpd(wf);
  Outcome r;
  std::ostringstream t;
  t << "local tropical Poincare duality over " << wf.ring().to_string() << ": " << (rep.verdict ? "yes" : "no") << "\n";
  Json faces = Json::array();
  for (const auto& s : rep.faces) {
    Json f = face_json(fan, s.face);
    f["verdict"] = s.verdict;
    faces.push_back(f);
    describe_star(fan, s, r, t);
  }
  r.results["verdict"] = rep.verdict;
  r.results["faces"] = faces;
  r.text = t.str();
  r.code = rep.verdict ? 0 : 1;
  return r;
}

inline Outcome cmd_euler(const Options& o) {
  const auto wf = load_fan(o);
  Outcome r;
  std::ostringstream t;
  bool all = true;
  Json rows = Json::array();
  t << "Euler criterion over " << wf.ring().to_string() << "\n";
  for (std::size_t p : degrees(o, wf.dim())) {
    const auto e = euler_criterion(wf, p);
    rows.push_back(Json{{"p", p},
                        {"status", to_string(e.status)},
                        {"lhs", e.lhs},
                        {"rhs", e.rhs},
                        {"equation_holds", e.equation_holds},
                        {"hypothesis", e.hypothesis},
                        {"cap_isomorphism", e.cap_isomorphism}});
    t << "  p=" << p << ": (-1)^d chi = " << e.lhs << ", dim F^p(v) = " << e.rhs << " -> " << to_string(e.status) << "\n";
    if (e.status != Criterion::holds) {
      all = false;
      r.witnesses.push_back(Json{{"p", p}, {"status", to_string(e.status)}});
    }
  }
  r.results["criteria"] = rows;
  r.text = t.str();
  r.code = all ? 0 : 1;
  return r;
}

inline Outcome cmd_dim1(const Options& o) {
  const auto wf = load_fan(o);
  Outcome r;
  const bool v = classify_dim1(wf);
  r.results["verdict"] = v;
  for (FaceId a : wf.fan().maximal_faces())
    if (!wf.ring().is_unit(wf.weight(a))) {
      Json w = face_json(wf.fan(), a);
      w["weight"] = detail::rational_json(wf.weight(a));
      w["reason"] = "weight is not a unit";
      r.witnesses.push_back(w);
    }
  r.text = std::string("one-dimensional TPD over ") + wf.ring().to_string() + ": " + (v ? "yes" : "no") + "\n";
  r.code = v ? 0 : 1;
  return r;
}

inline Outcome cmd_star_export(const Options& o) {
  const auto wf = load_fan(o);
  if (!o.face) throw InputError("--face is required");
  Outcome r;
  const auto star = subdivided_star(wf, *o.face);
  r.document = serialize_fan(star);
  r.results["face"] = *o.face;
  r.results["rays"] = star.fan().rays().size();
  r.results["maximal_cones"] = star.fan().maximal_faces().size();
  r.text = "star of face " + std::to_string(*o.face) + ": " + std::to_string(star.fan().rays().size()) + " rays, " +
           std::to_string(star.fan().maximal_faces().size()) + " maximal cones\n";
  return r;
}

inline Outcome cmd_bergman(const Options& o) {
  if (o.matroid_path.empty()) throw InputError("--matroid is required");
  const Matroid m = parse_matroid_file(o.matroid_path);
  WeightedFan wf = bergman_fan(m);
  if (!o.ring.empty()) wf = wf.with_ring(RingTag::parse(o.ring));
  Outcome r;
  r.document = serialize_fan(wf);
  r.results["rays"] = wf.fan().rays().size();
  r.results["maximal_cones"] = wf.fan().maximal_faces().size();
  r.results["dim"] = wf.dim();
  r.text = "Bergman fan: " + std::to_string(wf.fan().rays().size()) + " rays, " +
           std::to_string(wf.fan().maximal_faces().size()) + " maximal cones, dimension " + std::to_string(wf.dim()) + "\n";
  return r;
}

inline Outcome cmd_star_row(const Options& o) {
  const auto wf = load_fan(o);
  const std::size_t d = wf.dim();
  Outcome r;
  std::ostringstream t;
  bool exact = true;
  Json rows = Json::array();
  for (std::size_t p : degrees(o, d)) {
    const auto c = star_row_complex(wf, p, wf.ring());
    const auto h = homology(c);
    Json ranks = Json::array(), groups = Json::array();
    bool ok = true;
    t << "p=" << p << ":";
    for (int q = 0; q <= static_cast<int>(d); ++q) {
      ranks.push_back(c.rank(q));
      groups.push_back(group_json(h.at(q).group));
      t << " " << h.at(q).group.to_string();
      if (q < static_cast<int>(d) && !h.at(q).group.is_zero()) {
        ok = false;
        r.witnesses.push_back(Json{{"p", p}, {"degree", q}, {"group", h.at(q).group.to_string()}});
      }
    }
    t << (ok ? "  (exact except in the rightmost position)\n" : "  (not exact)\n");
    rows.push_back(Json{{"p", p}, {"ranks", ranks}, {"cohomology", groups}, {"exact_except_rightmost", ok}});
    exact = exact && ok;
  }
  r.results["rows"] = rows;
  r.results["exact_except_rightmost"] = exact;
  r.text = t.str();
  r.code = exact ? 0 : 1;
  return r;
}

inline Json inputs_json(const Options& o) {
  Json j = Json::object();
  if (!o.fan_path.empty()) j["fan"] = o.fan_path;
  if (!o.matroid_path.empty()) j["matroid"] = o.matroid_path;
  if (!o.ring.empty()) j["ring"] = o.ring;
  if (o.p) j["p"] = *o.p;
  if (o.face) j["face"] = *o.face;
  return j;
}

}  // namespace cli

/// Runs the command line tool. Exit codes: 0 verdict true or computation
/// done, 1 verdict false, 2 input error, 3 internal error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli;
  CLI::App app{"Tropical homology and Poincare duality of weighted rational fans", "tropfan"};
  app.require_subcommand(1);
  Options o;
  struct Command {
    const char* name;
    const char* help;
    Outcome (*run)(const Options&);
  };
  const std::vector<Command> commands = {
      {"balance", "check the balancing condition", cmd_balance},
      {"homology", "Borel-Moore homology of the fan or of a star", cmd_homology},
      {"cohomology", "cohomology and compactly supported cohomology", cmd_cohomology},
      {"tpd", "certify tropical Poincare duality", cmd_tpd},
      {"local-tpd", "certify local tropical Poincare duality", cmd_local_tpd},
      {"euler", "Euler characteristic criterion over a field", cmd_euler},
      {"dim1", "classification of one-dimensional fans", cmd_dim1},
      {"star-export", "write a subdivided star as a fan document", cmd_star_export},
      {"bergman", "Bergman fan of a matroid", cmd_bergman},
      {"star-row", "row complex of star homologies", cmd_star_row},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* s = app.add_subcommand(c.name, c.help);
    s->add_option("--fan", o.fan_path, "fan document");
    s->add_option("--matroid", o.matroid_path, "matroid document");
    s->add_option("--ring", o.ring, "Z, Q or Fp:<p> (overrides the document)");
    s->add_option("--p", o.p, "degree p");
    s->add_option("--face", o.face, "face id");
    s->add_flag("--json", o.json, "print a JSON report");
    s->add_option("-o,--output", o.output, "output path");
    s->add_option("--threads", o.threads, "worker threads (default: TROPFAN_THREADS or 1)");
    subs.push_back(s);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::size_t which = 0;
  while (!subs[which]->parsed()) ++which;
  const Command& cmd = commands[which];
  if (o.threads > 0) set_thread_count(o.threads);

  Outcome r;
  try {
    r = cmd.run(o);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Json report{{"command", cmd.name}, {"inputs", inputs_json(o)}, {"results", r.results}, {"witnesses", r.witnesses}};
  try {
    if (r.document) {
      if (o.output.empty())
        out << *r.document;
      else
        write_file(o.output, *r.document);
      if (o.json)
        err << canonical_dump(report);
      else if (!o.output.empty())
        out << r.text;
    } else {
      const std::string text = o.json ? canonical_dump(report) : r.text;
      if (o.output.empty())
        out << text;
      else
        write_file(o.output, text);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return r.code;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace tropfan
