/*
 * Copyright 2026 The foxh Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "foxh/oracle.hpp"
#include "foxh/series.hpp"

namespace {

using foxh::Complex;
using foxh::Ctx;
using foxh::errc;
using foxh::Error;
using foxh::HParams;
using foxh::Real;
using json = nlohmann::ordered_json;

struct JobSpec {
  HParams params;
  std::optional<Complex> sigma;
  std::optional<Real> theta;
  std::optional<Real> omega;
  std::vector<Complex> grid;
  long n_max = 60;
  long nu_max = 400;
  Ctx ctx;
  std::string kind = "V";        // coeffs: q | l | V | h
  std::string evaluator = "auto";  // eval: phi | h | omega | w_direct | w_factorial
  std::string format = "csv";
};

// one output record: ordered (column, text) pairs
using Row = std::vector<std::pair<std::string, std::string>>;

Real parse_real(const json& j, mpfr_prec_t bits, const char* what) {
  if (j.is_string()) return Real::parse(j.get<std::string>(), bits);
  if (j.is_number()) return Real(j.get<double>(), bits);
  throw Error(errc::bad_job, std::string("expected number or string for ") + what);
}

Complex parse_complex(const json& j, mpfr_prec_t bits, const char* what) {
  if (j.is_array()) {
    if (j.size() != 2) throw Error(errc::bad_job, std::string(what) + ": [re, im] needs two entries");
    return Complex(parse_real(j[0], bits, what), parse_real(j[1], bits, what));
  }
  return Complex(parse_real(j, bits, what), Real::zero(bits));
}

JobSpec load_job(const std::string& path, long digits_override) {
  std::ifstream in(path);
  if (!in) throw Error(errc::io_error, "cannot open job file " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(errc::bad_job, std::string("job parse failure: ") + e.what());
  }

  JobSpec job;
  if (j.contains("digits")) job.ctx.digits = j["digits"].get<long>();
  if (digits_override > 0) job.ctx.digits = digits_override;
  if (j.contains("pole_merge_tol")) job.ctx.pole_merge_tol = j["pole_merge_tol"].get<double>();
  if (j.contains("integer_tol")) job.ctx.integer_tol = j["integer_tol"].get<double>();
  job.ctx.check();
  mpfr_prec_t bits = job.ctx.parse_bits();

  if (!j.contains("alpha") || !j.contains("a") || !j.contains("beta") || !j.contains("b"))
    throw Error(errc::bad_job, "job needs alpha, a, beta, b arrays");
  const json& alpha = j["alpha"];
  const json& a = j["a"];
  const json& beta = j["beta"];
  const json& b = j["b"];
  if (alpha.size() != a.size() || beta.size() != b.size())
    throw Error(errc::bad_job, "scale/shift arrays must have matching lengths");
  for (size_t i = 0; i < alpha.size(); ++i)
    job.params.upper.emplace_back(parse_real(alpha[i], bits, "alpha"),
                                  parse_complex(a[i], bits, "a"));
  for (size_t i = 0; i < beta.size(); ++i)
    job.params.lower.emplace_back(parse_real(beta[i], bits, "beta"),
                                  parse_complex(b[i], bits, "b"));

  if (j.contains("sigma")) job.sigma = parse_complex(j["sigma"], bits, "sigma");
  if (j.contains("theta")) job.theta = parse_real(j["theta"], bits, "theta");
  if (j.contains("omega")) job.omega = parse_real(j["omega"], bits, "omega");
  if (j.contains("n_max")) job.n_max = j["n_max"].get<long>();
  if (j.contains("nu_max")) job.nu_max = j["nu_max"].get<long>();
  if (j.contains("kind")) job.kind = j["kind"].get<std::string>();
  if (j.contains("evaluator")) job.evaluator = j["evaluator"].get<std::string>();
  if (j.contains("output")) job.format = j["output"].get<std::string>();

  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (g.contains("points")) {
      for (const auto& p : g["points"]) job.grid.push_back(parse_complex(p, bits, "grid point"));
    } else if (g.contains("start") && g.contains("stop") && g.contains("count")) {
      long count = g["count"].get<long>();
      if (count < 1) throw Error(errc::bad_job, "grid count must be >= 1");
      Complex start = parse_complex(g["start"], bits, "grid start");
      Complex stop = parse_complex(g["stop"], bits, "grid stop");
      if (count == 1) {
        job.grid.push_back(start);
      } else {
        Complex step = (stop - start) / (count - 1);
        for (long i = 0; i < count; ++i) job.grid.push_back(start + step * i);
      }
    } else {
      throw Error(errc::bad_job, "grid needs either points or start/stop/count");
    }
  }
  return job;
}

// ---------------------------------------------------------------------------
// output
// ---------------------------------------------------------------------------

int sig_digits(const Ctx& ctx) { return static_cast<int>(std::min(ctx.digits, 30L)); }

std::string fmt(const Real& x, int sig) { return x.str(sig); }

void emit(std::ostream& out, const std::vector<Row>& rows, const std::string& format) {
  if (rows.empty()) return;
  if (format == "jsonl") {
    for (const auto& row : rows) {
      json j = json::object();
      for (const auto& [k, v] : row) j[k] = v;
      out << j.dump() << "\n";
    }
    return;
  }
  // csv
  for (size_t i = 0; i < rows[0].size(); ++i) {
    if (i) out << ",";
    out << rows[0][i].first;
  }
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << row[i].second;
    }
    out << "\n";
  }
}

// strided parallel map with deterministic order
template <class Fn>
std::vector<Row> parallel_rows(size_t count, int threads, Fn&& fn) {
  std::vector<Row> rows(count);
  if (threads <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) rows[i] = fn(i);
    return rows;
  }
  std::vector<std::thread> pool;
  int n = std::min<int>(threads, static_cast<int>(count));
  pool.reserve(static_cast<size_t>(n));
  for (int w = 0; w < n; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = static_cast<size_t>(w); i < count; i += static_cast<size_t>(n))
        rows[i] = fn(i);
    });
  for (auto& th : pool) th.join();
  return rows;
}

void put_complex(Row& row, const std::string& prefix, const Complex& z, int sig) {
  row.emplace_back(prefix + "_re", fmt(z.re, sig));
  row.emplace_back(prefix + "_im", fmt(z.im, sig));
}

Row error_row_for_point(const Complex& t, const Error& e, int sig, const char* value_name) {
  Row row;
  put_complex(row, "t", t, sig);
  row.emplace_back(std::string(value_name) + "_re", "");
  row.emplace_back(std::string(value_name) + "_im", "");
  row.emplace_back("trunc_estimate", "");
  row.emplace_back("terms_used", "");
  row.emplace_back("status", foxh::errc_name(e.code()));
  return row;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int run_domain(const JobSpec& job, std::ostream& out) {
  const Ctx& ctx = job.ctx;
  int sig = sig_digits(ctx);
  foxh::DomainInfo info = foxh::derive(job.params, ctx);
  Row row;
  row.emplace_back("mu", fmt(info.mu, sig));
  row.emplace_back("beta_const", fmt(info.beta_const, sig));
  row.emplace_back("rho", fmt(info.rho, sig));
  row.emplace_back("gamma1", fmt(info.gamma1, sig));
  row.emplace_back("eta", std::to_string(info.eta));
  row.emplace_back("c0", fmt(info.c0, sig));
  row.emplace_back("radius", fmt(info.radius, sig));
  row.emplace_back("delta_neutral", info.delta_neutral ? "true" : "false");
  row.emplace_back("boundary_gamma", info.boundary_gamma ? "true" : "false");
  if (job.sigma) {
    Real lam = foxh::abscissa_unchecked(job.params, *job.sigma, ctx);
    row.emplace_back("lambda", fmt(lam, sig));
  }
  emit(out, {row}, job.format);
  return 0;
}

int run_coeffs(const JobSpec& job, std::ostream& out) {
  const Ctx& ctx = job.ctx;
  int sig = sig_digits(ctx);
  foxh::CoefficientTable table;
  mpfr_prec_t bits = ctx.parse_bits();
  Complex sigma = job.sigma.value_or(Complex::zero(bits));
  Real theta = job.theta.value_or(Real::zero(bits));
  if (job.kind == "q") {
    table = foxh::q_moments(job.params, std::max(1L, job.n_max), ctx);
  } else if (job.kind == "l") {
    table = foxh::l_sequence(foxh::q_moments(job.params, std::max(1L, job.n_max), ctx),
                             std::max(1L, job.n_max));
  } else if (job.kind == "V") {
    table = foxh::v_coefficients(job.params, sigma, job.n_max, ctx);
  } else if (job.kind == "h") {
    table = foxh::h_coefficients(job.params, theta, job.n_max, ctx);
  } else {
    throw Error(errc::bad_job, "kind must be one of q, l, V, h");
  }
  std::vector<Row> rows;
  long first = table.kind == foxh::CoefficientTable::Kind::q ? 1 : 0;
  for (long i = 0; i < table.size(); ++i) {
    Row row;
    row.emplace_back("index", std::to_string(first + i));
    row.emplace_back("re", fmt(table.values[static_cast<size_t>(i)].re, sig));
    row.emplace_back("im", fmt(table.values[static_cast<size_t>(i)].im, sig));
    double lost = i < static_cast<long>(table.cancellation_report.size())
                      ? table.cancellation_report[static_cast<size_t>(i)]
                      : 0.0;
    std::ostringstream ss;
    ss << static_cast<long>(lost + 0.5);
    row.emplace_back("digits_lost", ss.str());
    rows.push_back(std::move(row));
  }
  emit(out, rows, job.format);
  return 0;
}

int run_eval(const JobSpec& job, std::ostream& out, int threads) {
  const Ctx& ctx = job.ctx;
  int sig = sig_digits(ctx);
  if (job.grid.empty()) throw Error(errc::bad_job, "eval needs a nonempty grid");
  mpfr_prec_t bits = ctx.parse_bits();

  std::string mode = job.evaluator;
  if (mode == "auto") {
    if (job.omega) mode = "omega";
    else if (job.theta) mode = "h";
    else if (job.sigma) mode = "phi";
    else throw Error(errc::bad_job, "eval: provide sigma, theta, or omega");
  }

  foxh::DomainInfo info = foxh::derive(job.params, ctx);
  Real theta = job.theta.value_or(Real::zero(bits));
  Complex sigma = job.sigma.value_or(Complex::zero(bits));

  // tables are built once and shared read-only across points
  std::optional<foxh::CoefficientTable> vt, ht;
  std::optional<HParams> resc;
  std::optional<foxh::DomainInfo> resc_info;
  std::optional<Real> lambda;
  if (mode == "phi") {
    vt = foxh::v_coefficients(job.params, sigma, job.n_max, ctx);
  } else if (mode == "h") {
    ht = foxh::h_coefficients(job.params, theta, job.n_max, ctx);
  } else if (mode == "omega") {
    resc = foxh::rescale(job.params, job.omega.value());
    resc_info = foxh::derive(*resc, ctx);
    ht = foxh::h_coefficients(*resc, theta, job.n_max, ctx);
  } else if (mode == "w_factorial") {
    ht = foxh::h_coefficients(job.params, theta, job.n_max, ctx);
    HParams aug = foxh::augment(job.params, theta, info.eta);
    Complex sig_aug(theta + info.eta, Real::zero(theta.prec()));
    lambda = foxh::abscissa_unchecked(aug, sig_aug, ctx);
  } else if (mode != "w_direct") {
    throw Error(errc::bad_job, "evaluator must be phi, h, omega, w_direct or w_factorial");
  }

  auto rows = parallel_rows(job.grid.size(), threads, [&](size_t i) -> Row {
    const Complex& t = job.grid[i];
    try {
      foxh::SeriesValue sv;
      if (mode == "phi") {
        sv = foxh::eval_phi_with(*vt, info, t, ctx);
      } else if (mode == "h") {
        sv = foxh::eval_H_general_with(*ht, info, theta, t, ctx);
      } else if (mode == "omega") {
        // assemble through the shared rescaled table
        Complex lt = foxh::log(t);
        Complex u = foxh::exp(lt * *job.omega);
        sv = foxh::eval_H_general_with(*ht, *resc_info, theta, u, ctx);
        Complex fix = foxh::exp(lt * (*job.omega * (theta + 1))) / foxh::pow(u, theta + 1);
        sv.value = sv.value * fix * *job.omega;
        sv.trunc_estimate = sv.trunc_estimate * foxh::abs(fix) * foxh::abs(*job.omega);
      } else if (mode == "w_direct") {
        sv.value = foxh::eval_W_direct(job.params, t, ctx);
        sv.terms_used = 1;
        sv.trunc_estimate = Real::zero(ctx.bits());
        sv.converged = true;
      } else {
        sv = foxh::eval_W_factorial_with(*ht, info, theta, t, ctx, &lambda.value());
      }
      Row row;
      put_complex(row, "t", t, sig);
      put_complex(row, "value", sv.value, sig);
      row.emplace_back("trunc_estimate", fmt(sv.trunc_estimate, sig));
      row.emplace_back("terms_used", std::to_string(sv.terms_used));
      row.emplace_back("status", sv.converged ? "ok" : "unconverged");
      return row;
    } catch (const Error& e) {
      return error_row_for_point(t, e, sig, "value");
    }
  });
  emit(out, rows, job.format);
  return 0;
}

int run_oracle(const JobSpec& job, std::ostream& out, int threads) {
  const Ctx& ctx = job.ctx;
  int sig = sig_digits(ctx);
  if (job.grid.empty()) throw Error(errc::bad_job, "oracle needs a nonempty grid");
  foxh::DomainInfo info = foxh::derive(job.params, ctx);

  auto rows = parallel_rows(job.grid.size(), threads, [&](size_t i) -> Row {
    const Complex& t = job.grid[i];
    try {
      foxh::SeriesValue sv = foxh::residue_series(job.params, t * info.rho, job.nu_max, ctx);
      Row row;
      put_complex(row, "t", t, sig);
      put_complex(row, "value", sv.value, sig);
      row.emplace_back("trunc_estimate", fmt(sv.trunc_estimate, sig));
      row.emplace_back("terms_used", std::to_string(sv.terms_used));
      row.emplace_back("status", sv.converged ? "ok" : "unconverged");
      return row;
    } catch (const Error& e) {
      return error_row_for_point(t, e, sig, "value");
    }
  });
  emit(out, rows, job.format);
  return 0;
}

int run_compare(const JobSpec& job, std::ostream& out, int threads) {
  const Ctx& ctx = job.ctx;
  int sig = sig_digits(ctx);
  if (job.grid.empty()) throw Error(errc::bad_job, "compare needs a nonempty grid");
  mpfr_prec_t bits = ctx.parse_bits();

  foxh::DomainInfo info = foxh::derive(job.params, ctx);
  Real theta = job.theta.value_or(Real::zero(bits));
  foxh::CoefficientTable ht = foxh::h_coefficients(job.params, theta, job.n_max, ctx);
  auto fam = foxh::detect_family(job.params, ctx);
  Real tiny = foxh::pow(Real(10, ctx.bits()), -3 * ctx.digits);

  std::vector<Real> rels(job.grid.size(), Real::nan(ctx.bits()));
  auto rows = parallel_rows(job.grid.size(), threads, [&](size_t i) -> Row {
    const Complex& t = job.grid[i];
    try {
      foxh::SeriesValue e = foxh::eval_H_general_with(ht, info, theta, t, ctx);
      Complex o = fam ? foxh::closed_form(fam->family, fam->a, fam->b, t, ctx)
                      : foxh::residue_series(job.params, t * info.rho, job.nu_max, ctx).value;
      Real ae = foxh::abs(e.value - o);
      Real re_err = ae / foxh::max(foxh::abs(o), tiny);
      rels[i] = re_err;
      Row row;
      put_complex(row, "t", t, sig);
      put_complex(row, "expansion", e.value, sig);
      put_complex(row, "oracle", o, sig);
      row.emplace_back("abs_err", fmt(ae, sig));
      row.emplace_back("rel_err", fmt(re_err, sig));
      row.emplace_back("terms_used", std::to_string(e.terms_used));
      row.emplace_back("status", "ok");
      return row;
    } catch (const Error& e) {
      Row row;
      put_complex(row, "t", t, sig);
      for (const char* c : {"expansion_re", "expansion_im", "oracle_re", "oracle_im", "abs_err", "rel_err", "terms_used"})
        row.emplace_back(c, "");
      row.emplace_back("status", foxh::errc_name(e.code()));
      return row;
    }
  });

  Real max_rel = Real::zero(ctx.bits());
  for (const Real& r : rels)
    if (!r.is_nan()) max_rel = foxh::max(max_rel, r);
  Row footer;
  put_complex(footer, "t", Complex::zero(ctx.bits()), 1);
  footer[0].second = "";
  footer[1].second = "";
  for (const char* c : {"expansion_re", "expansion_im", "oracle_re", "oracle_im", "abs_err"})
    footer.emplace_back(c, "");
  footer.emplace_back("rel_err", fmt(max_rel, sig));
  footer.emplace_back("terms_used", "");
  footer.emplace_back("status", "summary");
  rows.push_back(std::move(footer));
  emit(out, rows, job.format);
  return 0;
}

int run_abscissa(const JobSpec& job, std::ostream& out) {
  const Ctx& ctx = job.ctx;
  int sig = sig_digits(ctx);
  mpfr_prec_t bits = ctx.parse_bits();
  Complex sigma = job.sigma.value_or(Complex::zero(bits));
  Real lam = foxh::abscissa(job.params, sigma, ctx);
  foxh::PoleSet ps = foxh::pole_set(job.params, sigma, 64, ctx);
  Row row;
  put_complex(row, "sigma", sigma, sig);
  row.emplace_back("lambda", fmt(lam, sig));
  row.emplace_back("beta_hat", fmt(ps.beta_hat, sig));
  row.emplace_back("poles_found", std::to_string(ps.records.size()));
  emit(out, {row}, job.format);
  return 0;
}

int exit_code_for(errc code) {
  switch (code) {
    case errc::precision_exhausted:
      return 3;
    case errc::io_error:
      return 4;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delta-neutral H-function expansions near the positive singular point"};
  app.require_subcommand(1);

  std::string job_path, out_path = "-", format_override;
  long digits_override = 0;
  int threads = 1;
  app.add_option("--job", job_path, "job file (json)")->required();
  app.add_option("--out", out_path, "output file or - for stdout");
  app.add_option("--format", format_override, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--digits", digits_override, "override working decimal digits");
  app.add_option("--threads", threads, "grid evaluation threads")->check(CLI::PositiveNumber);

  auto* c_domain = app.add_subcommand("domain", "derived domain quantities");
  auto* c_coeffs = app.add_subcommand("coeffs", "coefficient tables (kind = q|l|V|h)");
  auto* c_eval = app.add_subcommand("eval", "series evaluation over the grid");
  auto* c_oracle = app.add_subcommand("oracle", "residue-series oracle over the grid");
  auto* c_compare = app.add_subcommand("compare", "expansion vs oracle with error columns");
  auto* c_abscissa = app.add_subcommand("abscissa", "inverse-factorial-series abscissa");
  for (auto* sub : {c_domain, c_coeffs, c_eval, c_oracle, c_compare, c_abscissa})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::ofstream file_out;
  std::ostream* out = &std::cout;
  std::ostringstream buffer;

  int rc = 0;
  std::string fmt_used = "csv";
  try {
    JobSpec job = load_job(job_path, digits_override);
    if (!format_override.empty()) job.format = format_override;
    if (job.format != "csv" && job.format != "jsonl")
      throw Error(errc::bad_job, "output format must be csv or jsonl");
    fmt_used = job.format;

    if (c_domain->parsed()) rc = run_domain(job, buffer);
    else if (c_coeffs->parsed()) rc = run_coeffs(job, buffer);
    else if (c_eval->parsed()) rc = run_eval(job, buffer, threads);
    else if (c_oracle->parsed()) rc = run_oracle(job, buffer, threads);
    else if (c_compare->parsed()) rc = run_compare(job, buffer, threads);
    else if (c_abscissa->parsed()) rc = run_abscissa(job, buffer);
  } catch (const Error& e) {
    Row row;
    row.emplace_back("error", foxh::errc_name(e.code()));
    std::string msg = e.what();
    for (auto& ch : msg)
      if (ch == ',' || ch == '\n') ch = ';';
    row.emplace_back("message", msg);
    emit(buffer, {row}, fmt_used);
    rc = exit_code_for(e.code());
  } catch (const std::exception& e) {
    Row row;
    row.emplace_back("error", "Internal");
    row.emplace_back("message", e.what());
    emit(buffer, {row}, fmt_used);
    rc = 2;
  }

  if (out_path != "-") {
    file_out.open(out_path);
    if (!file_out) {
      std::cerr << "cannot open output file " << out_path << "\n";
      return 4;
    }
    out = &file_out;
  }
  *out << buffer.str();
  out->flush();
  return rc;
}
