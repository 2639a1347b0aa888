#pragma once

// Command-line front end. run_command() is the whole program; main() only
// forwards argv and the standard streams.
//
// Exit status: 0 every check passed, 1 an inequality failed, 2 usage or
// input error. Reports go to `out`, diagnostics to `err`.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddvv/bw.hpp"
#include "ddvv/canonical.hpp"
#include "ddvv/ddvv.hpp"
#include "ddvv/error.hpp"
#include "ddvv/fuzz.hpp"
#include "ddvv/io.hpp"
#include "ddvv/lemmas.hpp"
#include "ddvv/parallel.hpp"
#include "ddvv/search.hpp"

namespace ddvv::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

enum class Format { kJson, kCsv, kText };

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return format_json(v);
}

inline std::string csv_field(const Json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// Emits a report object. CSV and text carry only the scalar fields.
inline void emit(const Json& report, Format format, std::ostream& out) {
  switch (format) {
    case Format::kJson:
      out << format_json(report) << '\n';
      break;
    case Format::kCsv: {
      std::string header;
      std::string row;
      for (const auto& [k, v] : report.items()) {
        if (v.is_structured()) continue;
        if (!header.empty()) {
          header += ',';
          row += ',';
        }
        header += k;
        row += csv_field(v);
      }
      out << header << '\n' << row << '\n';
      break;
    }
    case Format::kText:
      for (const auto& [k, v] : report.items()) {
        if (v.is_structured()) continue;
        out << k << ": " << scalar_text(v) << '\n';
      }
      break;
  }
}

inline Json with_report(Json j, const InequalityReport& r) {
  const Json fields = report_to_json(r);
  for (const auto& [k, v] : fields.items()) j[k] = v;
  return j;
}

inline void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

inline Json summary_to_json(const FuzzSummary& s) {
  Json j;
  j["oracle"] = std::string(oracle_name(s.config.oracle));
  j["dist"] = std::string(distribution_name(s.config.dist));
  j["n"] = s.config.n;
  j["m"] = s.config.m;
  j["seed"] = s.config.seed;
  j["trials"] = s.config.trials;
  j["passes"] = s.passes;
  j["failures"] = s.failures();
  j["max_ratio"] = s.max_ratio;
  j["argmax_trial"] = s.argmax_trial ? Json(*s.argmax_trial) : Json(nullptr);
  j["argmax_digest"] = s.argmax_digest;
  j["tol"] = s.config.tol;
  return j;
}

}  // namespace detail

struct Options {
  std::string input;
  std::string y_input;
  double tol = kDefaultTol;
  std::string format = "json";
  bool emit_canonical = false;
  std::string lemma_s;
  std::optional<double> lemma_y;
  std::size_t max_n = 32;
  std::size_t n = 3;
  std::size_t m = 3;
  std::size_t restarts = 20;
  std::size_t max_iters = 5000;
  double step = 0.1;
  std::uint64_t seed = 0;
  std::string oracle;
  std::size_t trials = 1000;
  std::string dist = "gaussian";
  bool verbose = false;
};

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for the DDVV and Boettcher-Wenzel commutator inequalities", "ddvv"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--tol", o.tol, "Relative tolerance");
  };

  auto* check = app.add_subcommand("check", "Evaluate the matrix-form inequality on a tuple file");
  check->add_option("--input", o.input, "Tuple JSON file")->required();
  check->add_flag("--emit-canonical", o.emit_canonical,
                  "Also write the canonical form to <input>.canonical.json");
  add_format(check);

  auto* geom = app.add_subcommand("geom", "Check rho + rho_perp <= |H|^2 + c on a second fundamental form");
  geom->add_option("--input", o.input, "Second fundamental form JSON file")->required();
  add_format(geom);

  auto* canon = app.add_subcommand("canon", "Emit the canonical form and witness of a tuple");
  canon->add_option("--input", o.input, "Tuple JSON file")->required();
  add_format(canon);

  auto* lemma = app.add_subcommand("lemma", "Run one of the lemma oracles");
  lemma->require_subcommand(1);
  auto* l1 = lemma->add_subcommand("lemma1", "Weighted difference bound; input {\"eta\", \"r\"}");
  auto* l2 = lemma->add_subcommand("lemma2", "Unit diagonal commutator bound; input {\"a\", \"matrices\"}");
  auto* lr = lemma->add_subcommand("remark", "Sharpened commutator bound; input {\"a\", \"b\"}");
  auto* ld = lemma->add_subcommand("delta", "Off-diagonal mass bound; input is a tuple file");
  auto* la = lemma->add_subcommand("arrowhead", "Arrowhead spectral bound and determinant identity");
  for (auto* sub : {l1, l2, lr, ld}) {
    sub->add_option("--input", o.input, "JSON input file")->required();
    add_format(sub);
  }
  la->add_option("--s", o.lemma_s, "Comma-separated nonnegative weights s_2..s_n")->required();
  la->add_option("--y", o.lemma_y, "Evaluate the determinant identity at y");
  add_format(la);

  auto* bw = app.add_subcommand("bw", "Commutator operator T and the Boettcher-Wenzel bound");
  bw->require_subcommand(1);
  auto* bs = bw->add_subcommand("spectrum", "Largest eigenvalue of T for X");
  auto* bc = bw->add_subcommand("check", "||[X,Y]||^2 <= 2||X||^2||Y||^2");
  auto* bp = bw->add_subcommand("pair", "Paired eigenvector [X^T, Y^T]");
  auto* bv = bw->add_subcommand("svd", "||[X,Y]|| against its singular-value reduction");
  auto* bt = bw->add_subcommand("trivial", "Bound in the regime s_1^2 <= 1/2");
  for (auto* sub : {bs, bc, bp, bv, bt}) {
    sub->add_option("--input", o.input, "Matrix JSON file {\"n\", \"matrix\"} for X")->required();
    auto* yopt = sub->add_option("--y", o.y_input, "Matrix JSON file for Y");
    if (sub == bc || sub == bv || sub == bt) yopt->required();
    sub->add_option("--max-n", o.max_n, "Largest n for which T is built");
    add_format(sub);
  }

  auto* search = app.add_subcommand("search", "Projected gradient ascent for the extremal ratio");
  search->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
  search->add_option("--m", o.m)->required()->check(CLI::PositiveNumber);
  search->add_option("--restarts", o.restarts)->check(CLI::PositiveNumber);
  search->add_option("--seed", o.seed)->required();
  search->add_option("--max-iters", o.max_iters)->check(CLI::PositiveNumber);
  search->add_option("--step", o.step)->check(CLI::PositiveNumber);
  add_format(search);

  auto* fuzz = app.add_subcommand("fuzz", "Randomized campaign over one oracle");
  fuzz->add_option("--oracle", o.oracle)->required();
  fuzz->add_option("--trials", o.trials);
  fuzz->add_option("--n", o.n)->check(CLI::PositiveNumber);
  fuzz->add_option("--m", o.m)->check(CLI::PositiveNumber);
  fuzz->add_option("--seed", o.seed)->required();
  fuzz->add_option("--dist", o.dist)->check(CLI::IsMember({"gaussian", "orthogonal-canonical"}));
  fuzz->add_flag("--verbose", o.verbose, "Per-trial rows (trial_index, ratio, pass)");
  add_format(fuzz);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ddvv");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  const Format format = o.format == "csv" ? Format::kCsv : o.format == "text" ? Format::kText : Format::kJson;
  auto finish = [&](const Json& report, bool pass) {
    detail::emit(report, format, out);
    return pass ? kExitPass : kExitFail;
  };

  try {
    if (*check) {
      auto parsed = parse_tuple_text(detail::read_file(o.input));
      detail::print_warnings(parsed.warnings, err);
      const auto r = evaluate_matrix_form(parsed.value, o.tol);
      Json j;
      j["command"] = "check";
      j["n"] = parsed.value.n();
      j["m"] = parsed.value.m();
      j = detail::with_report(std::move(j), r);
      if (o.emit_canonical) {
        const std::string path = o.input + ".canonical.json";
        const CanonicalForm cf = canonicalize(parsed.value);
        detail::write_file(path, serialize_tuple(cf.tuple) + "\n");
        j["canonical_file"] = path;
      }
      return finish(j, r.pass);
    }

    if (*geom) {
      auto parsed = parse_sff_text(detail::read_file(o.input));
      detail::print_warnings(parsed.warnings, err);
      const auto g = geometric_quantities(parsed.value);
      const auto r = check_conjecture1(parsed.value, o.tol);
      Json j;
      j["command"] = "geom";
      j["n"] = parsed.value.n();
      j["m"] = parsed.value.m();
      j["c"] = parsed.value.c;
      j["rho"] = g.rho;
      j["rho_perp"] = g.rho_perp;
      j["h_mean_sq"] = g.h_mean_sq;
      j = detail::with_report(std::move(j), r);
      return finish(j, r.pass);
    }

    if (*canon) {
      auto parsed = parse_tuple_text(detail::read_file(o.input));
      detail::print_warnings(parsed.warnings, err);
      const CanonicalForm cf = canonicalize(parsed.value);
      const auto d = diagnose_canonical(cf.tuple);
      const double ratio_in = ddvv_ratio(parsed.value);
      const double ratio_out = ddvv_ratio(cf.tuple);
      Json j;
      j["command"] = "canon";
      j["n"] = cf.tuple.n();
      j["m"] = cf.tuple.m();
      j["ratio_input"] = ratio_in;
      j["ratio_canonical"] = ratio_out;
      j["first_off_diagonal"] = d.first_off_diagonal;
      j["worst_cross_inner"] = d.worst_cross_inner;
      j["norms_descending"] = d.norms_descending;
      j["significant"] = d.significant;
      j["canonical"] = d.ok;
      j["tuple"] = tuple_to_json(cf.tuple);
      j["witness"] = Json{{"p", matrix_to_json(cf.witness.p())}, {"q", matrix_to_json(cf.witness.q())}};
      return finish(j, true);
    }

    if (*lemma) {
      Json j;
      if (*la) {
        std::vector<double> s;
        std::stringstream ss(o.lemma_s);
        for (std::string item; std::getline(ss, item, ',');) {
          try {
            std::size_t used = 0;
            s.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
          } catch (const std::exception&) {
            throw ValidationError("bad weight \"" + item + "\"");
          }
        }
        const ArrowheadMatrix p = arrowhead_build(s);
        const auto b = arrowhead_spectral_bound(p);
        j["command"] = "lemma arrowhead";
        j["n"] = p.n();
        j["lambda_max"] = b.lambda_max;
        j["bound"] = b.bound;
        bool pass = b.pass;
        if (o.lemma_y) {
          const auto d = arrowhead_det_identity_check(p, *o.lemma_y);
          j["y"] = *o.lemma_y;
          j["det_direct"] = d.direct;
          j["det_formula"] = d.formula;
          j["det_agree"] = d.agree;
          pass = pass && d.agree;
        }
        j["pass"] = pass;
        return finish(j, pass);
      }

      const Json in = ddvv::detail::parse_json(detail::read_file(o.input));
      if (*l1) {
        const Json& eta_j = ddvv::detail::require_key(in, "eta");
        const Json& r_j = ddvv::detail::require_key(in, "r");
        if (!eta_j.is_array() || !r_j.is_array()) throw ValidationError("\"eta\" and \"r\" must be arrays");
        std::vector<double> eta;
        std::vector<double> r;
        for (std::size_t k = 0; k < eta_j.size(); ++k)
          eta.push_back(ddvv::detail::require_number(eta_j[k], "eta[" + std::to_string(k) + "]"));
        for (std::size_t k = 0; k < r_j.size(); ++k)
          r.push_back(ddvv::detail::require_number(r_j[k], "r[" + std::to_string(k) + "]"));
        const EtaVector e(std::move(eta));
        const WeightSet w(e.size(), std::move(r));
        const auto rep = lemma1_check(e, w, o.tol);
        j["command"] = "lemma lemma1";
        j["n"] = e.size();
        j = detail::with_report(std::move(j), rep);
        return finish(j, rep.pass);
      }
      if (*l2 || *lr) {
        const Json& a_j = ddvv::detail::require_key(in, "a");
        if (!a_j.is_array() || a_j.empty()) throw ValidationError("\"a\" must be a square array");
        const std::size_t n = a_j.size();
        const SymMatrix a(ddvv::detail::read_square(a_j, n, "a"));
        if (*l2) {
          const Json& list = ddvv::detail::require_key(in, "matrices");
          if (!list.is_array() || list.empty()) throw ValidationError("\"matrices\" must be a nonempty array");
          auto rest = ddvv::detail::read_symmetric_list(list, n, list.size(), "matrices");
          detail::print_warnings(rest.warnings, err);
          const auto rep = lemma2_check(a, rest.value, o.tol);
          j["command"] = "lemma lemma2";
          j["n"] = n;
          j["m"] = rest.value.m() + 1;
          j = detail::with_report(std::move(j), rep);
          return finish(j, rep.pass);
        }
        const SymMatrix b(ddvv::detail::read_square(ddvv::detail::require_key(in, "b"), n, "b"));
        const auto rep = remark_bound_check(a, b, o.tol);
        j["command"] = "lemma remark";
        j["n"] = n;
        j = detail::with_report(std::move(j), rep.sharp);
        j["weak_lhs"] = rep.weak.lhs;
        j["weak_pass"] = rep.weak.pass;
        return finish(j, rep.sharp.pass && rep.weak.pass);
      }
      if (*ld) {
        const std::size_t n = ddvv::detail::require_positive_int(in, "n");
        const std::size_t m = ddvv::detail::require_positive_int(in, "m");
        auto rest = ddvv::detail::read_symmetric_list(ddvv::detail::require_key(in, "matrices"), n, m, "matrices");
        detail::print_warnings(rest.warnings, err);
        const auto rep = delta_bound_check(rest.value, o.tol);
        j["command"] = "lemma delta";
        j["n"] = n;
        j["m"] = m;
        j = detail::with_report(std::move(j), rep);
        return finish(j, rep.pass);
      }
    }

    if (*bw) {
      const Matrix x = parse_matrix_text(detail::read_file(o.input));
      std::optional<Matrix> y;
      if (!o.y_input.empty()) {
        y = parse_matrix_text(detail::read_file(o.y_input));
        if (y->rows() != x.rows()) throw ValidationError("X and Y differ in size");
      }
      auto require_small = [&] {
        if (x.rows() > o.max_n) {
          throw PreconditionError("n = " + std::to_string(x.rows()) + " exceeds --max-n " +
                                  std::to_string(o.max_n) + " (T needs n^4 storage)");
        }
      };
      Json j;
      j["n"] = x.rows();
      if (*bs) {
        require_small();
        const auto op = build_T_operator(x);
        const auto sp = bw_spectrum(op);
        const auto rep = InequalityReport::make(2.0 * x.squared_norm(), sp.alpha, o.tol);
        j["command"] = "bw spectrum";
        j["alpha"] = sp.alpha;
        j["x_norm_sq"] = x.squared_norm();
        j = detail::with_report(std::move(j), rep);
        j["eigvec"] = matrix_to_json(sp.eigvec);
        return finish(j, rep.pass);
      }
      if (*bp) {
        require_small();
        const auto op = build_T_operator(x);
        const Matrix yy = y ? *y : bw_spectrum(op).eigvec;
        const Matrix y1 = pair_eigenvector(op, yy);
        const auto er = eigen_residual(op, yy);
        const auto er1 = eigen_residual(op, y1);
        j["command"] = "bw pair";
        j["alpha"] = er.alpha;
        j["alpha_pair"] = er1.alpha;
        j["inner"] = frobenius_inner(yy, y1);
        j["pair_norm"] = y1.norm();
        j["pair_residual"] = er1.residual;
        const bool pass = std::abs(frobenius_inner(yy, y1)) <= 1e-10 * yy.norm() * y1.norm() &&
                          er1.residual <= 1e-8 * (1.0 + er.alpha) * y1.norm();
        j["pass"] = pass;
        j["y"] = matrix_to_json(yy);
        j["pair"] = matrix_to_json(y1);
        return finish(j, pass);
      }
      if (*bc) {
        const auto rep = bw_check(x, *y, o.tol);
        j["command"] = "bw check";
        j = detail::with_report(std::move(j), rep.sharp);
        j["weak_lhs"] = rep.weak.lhs;
        j["weak_pass"] = rep.weak.pass;
        return finish(j, rep.sharp.pass && rep.weak.pass);
      }
      if (*bv) {
        const auto red = svd_reduce_check(x, *y);
        j["command"] = "bw svd";
        j["norm_original"] = red.norm_original;
        j["norm_reduced"] = red.norm_reduced;
        j["agree"] = red.agree;
        j["pass"] = red.agree;
        return finish(j, red.agree);
      }
      if (*bt) {
        const auto rep = bw_trivial_case_check(x, *y, o.tol);
        j["command"] = "bw trivial";
        j = detail::with_report(std::move(j), rep);
        return finish(j, rep.pass);
      }
    }

    if (*search) {
      SearchConfig cfg;
      cfg.n = o.n;
      cfg.m = o.m;
      cfg.restarts = o.restarts;
      cfg.max_iters = o.max_iters;
      cfg.step = o.step;
      cfg.seed = o.seed;
      const SearchResult res = extremal_search(cfg, default_workers());
      const bool pass = res.best_ratio <= 1.0 + 1e-6;
      Json j;
      j["command"] = "search";
      j["n"] = cfg.n;
      j["m"] = cfg.m;
      j["restarts"] = cfg.restarts;
      j["seed"] = cfg.seed;
      j["best_ratio"] = res.best_ratio;
      j["best_restart"] = res.best_restart;
      j["iterations_used"] = res.iterations_used;
      j["converged"] = res.converged;
      j["pass"] = pass;
      j["best_tuple"] = tuple_to_json(res.best_tuple);
      return finish(j, pass);
    }

    if (*fuzz) {
      FuzzConfig cfg;
      cfg.oracle = parse_oracle(o.oracle);
      cfg.trials = o.trials;
      cfg.n = o.n;
      cfg.m = o.m;
      cfg.seed = o.seed;
      cfg.dist = parse_distribution(o.dist);
      cfg.tol = o.tol;
      cfg.keep_records = o.verbose;
      const FuzzSummary s = fuzz_campaign(cfg, default_workers());
      const bool pass = s.failures() == 0;
      if (o.verbose && format == Format::kCsv) {
        out << "trial_index,ratio,pass\n";
        for (const auto& r : s.records) {
          out << r.index << ',' << format_json(Json(r.ratio)) << ',' << (r.pass ? "true" : "false") << '\n';
        }
        return pass ? kExitPass : kExitFail;
      }
      Json j = detail::summary_to_json(s);
      if (o.verbose && format == Format::kJson) {
        Json rows = Json::array();
        for (const auto& r : s.records) rows.push_back(Json{{"trial_index", r.index}, {"ratio", r.ratio}, {"pass", r.pass}});
        j["records"] = std::move(rows);
      }
      return finish(j, pass);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no command given\n" << app.help();
  return kExitUsage;
}

}  // namespace ddvv::cli
