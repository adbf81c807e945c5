#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "hkfs/colength.hpp"
#include "hkfs/cyclo_cancel.hpp"
#include "hkfs/error.hpp"
#include "hkfs/fp_poly.hpp"
#include "hkfs/json_io.hpp"
#include "hkfs/phi.hpp"
#include "hkfs/qp_series.hpp"

namespace hkfs::cli {

namespace {

using io::Json;

struct Common {
  std::uint32_t p = 2;
  std::optional<std::size_t> vars;
  std::uint64_t budget = kDefaultBudget;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_vars = true) {
  cmd->add_option("--p", c.p, "prime characteristic")->required();
  if (with_vars) cmd->add_option("--vars", c.vars, "number of variables (default: inferred from the text)");
  cmd->add_option("--budget", c.budget, "largest allowed dimension p^(s n)")->check(CLI::PositiveNumber);
  cmd->add_flag("--json", c.json, "emit a single JSON document");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    cur.erase(std::remove_if(cur.begin(), cur.end(), ::isspace), cur.end());
    if (cur.empty()) throw ParseError("empty entry in list \"" + s + "\"");
    out.push_back(cur);
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

std::vector<Rat> rat_list(const std::string& s) {
  std::vector<Rat> out;
  for (const auto& x : split_list(s)) out.push_back(Rat::parse(x));
  return out;
}

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

ParsedPoly parse_poly(const std::string& text, const Common& c) {
  require_prime(c.p);
  ParsedPoly pp = parse_fp_poly(text, c.p, c.vars);
  return pp;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// Pole order at 1/p^d can exceed one only for inputs outside the theory;
// report that instead of failing the whole command.
Json residue_or_note(const RationalGF& g, unsigned d, std::uint32_t p) {
  try {
    return io::to_json(multiplicity_from_series(g, d, p));
  } catch (const DomainError& e) {
    return Json(std::string("undefined: ") + e.what());
  }
}

// ---- hk / fs ---------------------------------------------------------------

struct SeqOpts {
  Common c;
  std::string poly;
  unsigned nmax = 3;
  bool report = false;
  unsigned max_order = 4;
  std::optional<std::size_t> max_start;
};

void add_seq_opts(CLI::App* cmd, SeqOpts& o) {
  cmd->add_option("poly", o.poly, "polynomial, e.g. \"x^3+y^3+x*y*z\"")->required();
  add_common(cmd, o.c);
  cmd->add_option("--nmax", o.nmax, "largest n");
  cmd->add_flag("--report", o.report, "search for a recurrence and reconstruct the series");
  cmd->add_option("--max-order", o.max_order, "largest recurrence order tried");
  cmd->add_option("--max-start", o.max_start, "largest recurrence start tried");
}

int cmd_hk(const SeqOpts& o, std::ostream& out) {
  const ParsedPoly pp = parse_poly(o.poly, o.c);
  const FpPoly& f = pp.poly;
  const unsigned s = static_cast<unsigned>(f.num_vars());
  std::vector<Rat> terms;
  for (unsigned n = 0; n <= o.nmax; ++n) terms.push_back(Rat(hk_function(f, n, o.c.budget)));

  std::optional<PFractalReport> rep;
  Json mult;
  if (o.report) {
    rep = sequence_report("HK(" + f.str() + ")", terms, o.max_order, o.max_start);
    if (rep->gf) mult = residue_or_note(*rep->gf, s - 1, o.c.p);
  }

  if (o.c.json) {
    Json j;
    j["command"] = "hk";
    j["poly"] = f.str();
    j["s"] = s;
    j["p"] = o.c.p;
    j["terms"] = io::to_json(terms);
    if (rep) {
      j["report"] = io::to_json(*rep);
      j["multiplicity"] = mult;
    }
    emit(out, j);
    return 0;
  }
  out << "# HK of " << f.str() << " over F_" << o.c.p << ", s=" << s << "\n";
  for (unsigned n = 0; n <= o.nmax; ++n) out << n << " " << terms[n] << "\n";
  if (rep) {
    out << "verdict: " << rep->verdict_text() << "\n";
    if (rep->gf) {
      out << "series: " << rep->gf->str() << "\n";
      out << "e_HK: " << (mult.is_string() ? mult.get<std::string>() : mult.dump()) << "\n";
    }
  }
  return 0;
}

int cmd_fs(const SeqOpts& o, std::ostream& out) {
  const ParsedPoly pp = parse_poly(o.poly, o.c);
  const FpPoly& f = pp.poly;
  const unsigned s = static_cast<unsigned>(f.num_vars());
  std::vector<Rat> values;
  for (unsigned n = 1; n <= o.nmax; ++n) values.push_back(Rat(fs_function(f, n, o.c.budget)));

  std::optional<PFractalReport> rep;
  std::optional<RationalGF> fss;
  Json sig;
  if (o.report) {
    // e_{s,n} of the reflected function: colength(f, p^n - 1, n), and 0 at n = 0.
    const PhiFunction bar = reflect(PhiFunction::hypersurface(f, o.c.budget));
    std::vector<Rat> e = e_sequence(bar, s, o.nmax);
    rep = sequence_report("e_{" + std::to_string(s) + ",n}(reflect(phi[" + f.str() + "]))", std::move(e),
                          o.max_order, o.max_start);
    if (rep->gf) {
      fss = complement_series(*rep->gf, o.c.p, s);
      sig = residue_or_note(*fss, s - 1, o.c.p);
    }
  }

  if (o.c.json) {
    Json j;
    j["command"] = "fs";
    j["poly"] = f.str();
    j["s"] = s;
    j["p"] = o.c.p;
    j["n_from"] = 1;
    j["terms"] = io::to_json(values);
    if (rep) {
      j["report"] = io::to_json(*rep);
      j["fss"] = fss ? io::to_json(*fss) : Json(nullptr);
      j["signature"] = sig;
    }
    emit(out, j);
    return 0;
  }
  out << "# FS of " << f.str() << " over F_" << o.c.p << ", s=" << s << "\n";
  for (unsigned n = 1; n <= o.nmax; ++n) out << n << " " << values[n - 1] << "\n";
  if (rep) {
    out << "verdict: " << rep->verdict_text() << "\n";
    if (fss) {
      out << "FSS: " << fss->str() << "\n";
      out << "signature: " << (sig.is_string() ? sig.get<std::string>() : sig.dump()) << "\n";
    }
  }
  return 0;
}

// ---- phi -------------------------------------------------------------------

struct PhiOpts {
  Common c;
  std::string poly;
  std::string points;
  bool reflect = false;
  unsigned shift_n = 0;
  std::string shift_b = "0";
};

int cmd_phi(const PhiOpts& o, std::ostream& out) {
  const ParsedPoly pp = parse_poly(o.poly, o.c);
  PhiFunction phi = PhiFunction::hypersurface(pp.poly, o.c.budget);
  if (o.reflect) phi = reflect(phi);
  mpz_class b;
  if (b.set_str(o.shift_b, 10) != 0) throw ParseError("bad shift offset \"" + o.shift_b + "\"");
  if (o.shift_n > 0 || b != 0) phi = shift(phi, o.shift_n, b);

  Json values = Json::array();
  std::ostringstream text;
  text << "# " << phi.describe() << "\n";
  for (const auto& s : split_list(o.points)) {
    const DyadicPoint t = parse_point(s, o.c.p);
    const Rat v = phi(t);
    Json e;
    e["t"] = t.str(o.c.p);
    e["value"] = io::to_json(v);
    values.push_back(std::move(e));
    text << t.str(o.c.p) << " " << v << "\n";
  }
  if (o.c.json) {
    Json j;
    j["command"] = "phi";
    j["function"] = phi.describe();
    j["p"] = o.c.p;
    j["values"] = std::move(values);
    emit(out, j);
  } else {
    out << text.str();
  }
  return 0;
}

// ---- series ----------------------------------------------------------------

struct SeriesOpts {
  bool json = false;
  std::string file;
  std::string num, den;
  unsigned d = 0;
  std::size_t M = 1;
  std::uint32_t p = 0;
  std::size_t max_start = 0;
  std::optional<std::size_t> detect_max_start;
  unsigned max_order = 4;
  std::size_t terms = 10;
};

RationalGF load_gf(const SeriesOpts& o) {
  if (!o.file.empty()) {
    const Json j = io::read_file(o.file);
    if (j.contains("tables")) return series_of_qp(io::qp_from_json(j));
    return io::gf_from_json(j);
  }
  if (o.num.empty() || o.den.empty()) throw ParseError("give --file or both --num and --den");
  return RationalGF(UniPoly(rat_list(o.num)), UniPoly(rat_list(o.den)));
}

int cmd_series_fit(const SeriesOpts& o, std::ostream& out) {
  const io::SequenceFile seq = io::sequence_from_json(io::read_file(o.file));
  require_prime(seq.p);
  const auto fit = fit_sequence(seq.terms, seq.p, o.d, o.M, o.max_start);
  if (!fit) {
    throw DomainError("no degree-" + std::to_string(o.d) + ", period-" + std::to_string(o.M) +
                      " quasi-polynomial fits the sequence with start <= " + std::to_string(o.max_start));
  }
  const Json mult = residue_or_note(fit->gf, fit->qp.degree(), seq.p);
  if (o.json) {
    Json j = io::to_json(*fit);
    j["multiplicity"] = mult;
    emit(out, j);
    return 0;
  }
  out << "start: " << fit->start << "\n";
  for (unsigned j = 0; j <= fit->qp.degree(); ++j) {
    out << "a_" << j << ":";
    for (const auto& x : fit->qp.table(j)) out << " " << x;
    out << "\n";
  }
  out << "series: " << fit->gf.str() << "\n";
  out << "multiplicity: " << (mult.is_string() ? mult.get<std::string>() : mult.dump()) << "\n";
  return 0;
}

int cmd_series_detect(const SeriesOpts& o, std::ostream& out) {
  const io::SequenceFile seq = io::sequence_from_json(io::read_file(o.file));
  const PFractalReport rep = sequence_report(o.file, seq.terms, o.max_order, o.detect_max_start);
  if (o.json) {
    emit(out, io::to_json(rep));
    return 0;
  }
  out << "verdict: " << rep.verdict_text() << "\n";
  if (rep.certificate) {
    out << "order: " << rep.certificate->order << "\ncoefficients:";
    for (const auto& c : rep.certificate->coefficients) out << " " << c;
    out << "\nstart: " << rep.certificate->start << "\nseries: " << rep.gf->str() << "\n";
  }
  return 0;
}

int cmd_series_multiplicity(const SeriesOpts& o, std::ostream& out) {
  require_prime(o.p);
  const RationalGF g = load_gf(o);
  const Rat m = multiplicity_from_series(g, o.d, o.p);
  if (o.json) {
    Json j;
    j["gf"] = io::to_json(g);
    j["d"] = o.d;
    j["p"] = o.p;
    j["multiplicity"] = io::to_json(m);
    emit(out, j);
  } else {
    out << m << "\n";
  }
  return 0;
}

int cmd_series_expand(const SeriesOpts& o, std::ostream& out) {
  const RationalGF g = load_gf(o);
  const std::vector<Rat> e = g.expand(o.terms);
  if (o.json) {
    Json j;
    j["gf"] = io::to_json(g);
    j["terms"] = io::to_json(e);
    emit(out, j);
  } else {
    for (std::size_t n = 0; n < e.size(); ++n) out << n << " " << e[n] << "\n";
  }
  return 0;
}

// ---- cancel ----------------------------------------------------------------

struct CancelOpts {
  bool json = false;
  std::uint32_t p = 2;
  unsigned d = 1;
  unsigned M = 1;
  std::string ad = "1";
  std::string a0;
};

int cmd_cancel_analyze(const CancelOpts& o, std::ostream& out) {
  const CancellationInput inp{o.p, o.d, Rat::parse(o.ad), rat_list(o.a0)};
  const CancellationReport r = cancellation_analyze(inp);
  if (o.json) {
    emit(out, io::to_json(r));
    return 0;
  }
  out << "P: " << r.P.str() << "\nQ: " << r.Q.str() << "\n";
  out << "P(1/p^d) != 0: " << (r.pd_root_check ? "true" : "false") << "\n";
  out << "dividing cyclotomics:";
  for (unsigned k : r.dividing_cyclotomics) out << " " << k;
  out << "\nsimplified: " << r.simplified.str() << "\n";
  return 0;
}

int cmd_cancel_sm(const CancelOpts& o, std::ostream& out) {
  const SMSystem sys = sm_system(o.M, o.p, o.d);
  const unsigned dim = sm_dimension(o.M, o.p, o.d);
  if (o.json) {
    Json j = io::to_json(sys);
    j["rank"] = o.M - dim;
    j["dim"] = dim;
    emit(out, j);
    return 0;
  }
  for (const auto& row : sys.matrix) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << row[k];
    out << "\n";
  }
  out << "rank: " << o.M - dim << "\ndim: " << dim << "\n";
  return 0;
}

int cmd_cancel_question(const CancelOpts& o, std::ostream& out) {
  const QuestionRecord q = question_check(o.M, o.p, o.d);
  if (o.json) {
    emit(out, io::to_json(q));
    return 0;
  }
  out << "sm_dim: " << q.sm_dim << "\nvl_dim: " << q.vl_dim << "\ncontainment_ok: "
      << (q.containment_ok ? "true" : "false") << "\nequal: " << (q.equal ? "true" : "false") << "\nstatus: "
      << (q.observation_only ? "observation" : "covered") << "\n";
  return 0;
}

// ---- product-check -----------------------------------------------------------

struct ProductOpts {
  Common c;
  std::string f, g;
  std::string points = "1/2";
};

int cmd_product(const ProductOpts& o, std::ostream& out) {
  require_prime(o.c.p);
  const ParsedPoly pf = parse_fp_poly(o.f, o.c.p);
  const ParsedPoly pg = parse_fp_poly(o.g, o.c.p);
  std::set<unsigned> seen(pf.var_index.begin(), pf.var_index.end());
  for (unsigned v : pg.var_index) {
    if (seen.count(v) != 0) throw DomainError("f and g share the variable x" + std::to_string(v));
  }
  const std::size_t sf = pf.poly.num_vars(), sg = pg.poly.num_vars();
  const FpPoly fg = pf.poly.embedded(sf + sg, 0) * pg.poly.embedded(sf + sg, sf);

  const PhiFunction lhs = product_phi(PhiFunction::hypersurface(pf.poly, o.c.budget),
                                      PhiFunction::hypersurface(pg.poly, o.c.budget));
  const PhiFunction rhs = PhiFunction::hypersurface(fg, o.c.budget);

  bool all = true;
  Json rows = Json::array();
  std::ostringstream text;
  for (const auto& s : split_list(o.points)) {
    const DyadicPoint t = parse_point(s, o.c.p);
    const Rat a = lhs(t), b = rhs(t);
    all = all && a == b;
    Json r;
    r["t"] = t.str(o.c.p);
    r["combinator"] = io::to_json(a);
    r["direct"] = io::to_json(b);
    r["equal"] = a == b;
    rows.push_back(std::move(r));
    text << t.str(o.c.p) << " " << a << " " << b << " " << (a == b ? "equal" : "DIFFER") << "\n";
  }
  if (o.c.json) {
    Json j;
    j["command"] = "product-check";
    j["f"] = pf.poly.str();
    j["g"] = pg.poly.str();
    j["p"] = o.c.p;
    j["points"] = std::move(rows);
    j["all_equal"] = all;
    emit(out, j);
  } else {
    out << text.str() << (all ? "all equal" : "mismatch") << "\n";
  }
  return 0;
}

// ---- rnc -------------------------------------------------------------------

struct RncOpts {
  bool json = false;
  unsigned g = 2;
  std::uint32_t p = 2;
  unsigned nmax = 5;
};

int cmd_rnc(const RncOpts& o, std::ostream& out) {
  require_prime(o.p);
  std::vector<Rat> terms;
  for (unsigned n = 0; n <= o.nmax; ++n) terms.push_back(rnc_hk(o.g, o.p, n));
  if (o.json) {
    Json j;
    j["command"] = "rnc";
    j["g"] = o.g;
    j["p"] = o.p;
    j["terms"] = io::to_json(terms);
    emit(out, j);
  } else {
    for (unsigned n = 0; n <= o.nmax; ++n) out << n << " " << terms[n] << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert-Kunz and F-signature functions, their generating series, and cyclotomic cancellation"};
  app.name("hkfs");
  app.require_subcommand(1);

  SeqOpts hk, fs;
  auto* hk_cmd = app.add_subcommand("hk", "Hilbert-Kunz function HK_f(n), n = 0..nmax");
  add_seq_opts(hk_cmd, hk);
  auto* fs_cmd = app.add_subcommand("fs", "F-signature function FS_f(n), n = 1..nmax");
  add_seq_opts(fs_cmd, fs);

  PhiOpts phi;
  auto* phi_cmd = app.add_subcommand("phi", "evaluate phi_{f,p} at dyadic points");
  phi_cmd->add_option("poly", phi.poly)->required();
  add_common(phi_cmd, phi.c);
  phi_cmd->add_option("--points", phi.points, "comma-separated points a/p^n")->required();
  phi_cmd->add_flag("--reflect", phi.reflect, "evaluate t -> phi(1 - t)");
  phi_cmd->add_option("--shift-n", phi.shift_n, "apply T_{p^n|b} with this n");
  phi_cmd->add_option("--shift-b", phi.shift_b, "offset b of the shift");

  SeriesOpts ser;
  auto* series = app.add_subcommand("series", "generating series of sequences and quasi-polynomials");
  series->require_subcommand(1);
  auto* fit = series->add_subcommand("fit", "fit a quasi-polynomial in p^n to a sequence file");
  fit->add_option("--file", ser.file, "sequence file {\"p\", \"terms\"}")->required();
  fit->add_option("--d", ser.d, "degree")->required();
  fit->add_option("--M", ser.M, "period")->check(CLI::PositiveNumber);
  fit->add_option("--max-start", ser.max_start, "largest index from which the fit may start");
  fit->add_flag("--json", ser.json);
  auto* detect = series->add_subcommand("detect", "search a sequence file for a linear recurrence");
  detect->add_option("--file", ser.file, "sequence file {\"p\", \"terms\"}")->required();
  detect->add_option("--max-order", ser.max_order);
  detect->add_option("--max-start", ser.detect_max_start);
  detect->add_flag("--json", ser.json);
  auto* mult = series->add_subcommand("multiplicity", "lim (1 - p^d z) g(z) at z = 1/p^d");
  auto* expand = series->add_subcommand("expand", "Taylor coefficients of a rational series");
  for (auto* cmd : {mult, expand}) {
    cmd->add_option("--file", ser.file, "{\"num\", \"den\"} or quasi-polynomial file");
    cmd->add_option("--num", ser.num, "numerator coefficients, constant term first");
    cmd->add_option("--den", ser.den, "denominator coefficients, constant term first");
    cmd->add_flag("--json", ser.json);
  }
  mult->add_option("--d", ser.d)->required();
  mult->add_option("--p", ser.p)->required();
  expand->add_option("--terms", ser.terms, "number of coefficients");

  CancelOpts can;
  auto* cancel = app.add_subcommand("cancel", "cyclotomic cancellation for a_d p^(d n) + a_0(n)");
  cancel->require_subcommand(1);
  auto* analyze = cancel->add_subcommand("analyze", "build P/Q and find the dividing cyclotomics");
  analyze->add_option("--ad", can.ad, "leading coefficient a_d");
  analyze->add_option("--a0", can.a0, "periodic table a_0, comma separated")->required();
  auto* sm = cancel->add_subcommand("sm", "the linear system for zeta_M to be a root of P");
  auto* question = cancel->add_subcommand("question", "compare S_M with the sum of the V_l");
  for (auto* cmd : {analyze, sm, question}) {
    cmd->add_option("--p", can.p)->required();
    cmd->add_option("--d", can.d)->check(CLI::PositiveNumber);
    cmd->add_flag("--json", can.json);
  }
  for (auto* cmd : {sm, question}) cmd->add_option("--M", can.M)->required()->check(CLI::PositiveNumber);

  ProductOpts prod;
  auto* product = app.add_subcommand("product-check", "phi_f + phi_g - phi_f phi_g against phi_{fg}");
  product->add_option("f", prod.f)->required();
  product->add_option("g", prod.g)->required();
  add_common(product, prod.c, false);
  product->add_option("--points", prod.points, "comma-separated points a/p^n");

  RncOpts rnc;
  auto* rnc_cmd = app.add_subcommand("rnc", "HK function of the rational normal cone R_g");
  rnc_cmd->add_option("--g", rnc.g)->required()->check(CLI::Range(2u, 1000000u));
  rnc_cmd->add_option("--p", rnc.p)->required();
  rnc_cmd->add_option("--nmax", rnc.nmax);
  rnc_cmd->add_flag("--json", rnc.json);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*hk_cmd) return cmd_hk(hk, out);
    if (*fs_cmd) return cmd_fs(fs, out);
    if (*phi_cmd) return cmd_phi(phi, out);
    if (*fit) return cmd_series_fit(ser, out);
    if (*detect) return cmd_series_detect(ser, out);
    if (*mult) return cmd_series_multiplicity(ser, out);
    if (*expand) return cmd_series_expand(ser, out);
    if (*analyze) return cmd_cancel_analyze(can, out);
    if (*sm) return cmd_cancel_sm(can, out);
    if (*question) return cmd_cancel_question(can, out);
    if (*product) return cmd_product(prod, out);
    if (*rnc_cmd) return cmd_rnc(rnc, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  }
  return 1;
}

}  // namespace hkfs::cli
