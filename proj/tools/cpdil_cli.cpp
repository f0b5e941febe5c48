// Command-line driver over the C interface.
//
//   cpdil verify SEMIGROUP [--cert FILE] [--unitalized FILE] [--law] [--markov]
//                [--dilation] [--strong] [--minimal] [--corner] [...]
//   cpdil unitalize IN OUT
//   cpdil demo NAME [--out DIR]
//   cpdil export-gallery [--out DIR]
//
// Exit codes: 0 every check passed, 1 some check failed, 2 input error.

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpdil/cpdil.h"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kInputError = 2;

struct InputError {
  std::string message;
};
struct CheckFailure {};

void check(cpd_status status) {
  if (status != CPD_OK) throw InputError{std::string(cpd_last_error())};
}

struct SemigroupDeleter {
  void operator()(cpd_semigroup* g) const { cpd_semigroup_free(g); }
};
struct CertificateDeleter {
  void operator()(cpd_certificate* c) const { cpd_certificate_free(c); }
};
struct ReportDeleter {
  void operator()(cpd_report* r) const { cpd_report_free(r); }
};
using SemigroupPtr = std::unique_ptr<cpd_semigroup, SemigroupDeleter>;
using CertificatePtr = std::unique_ptr<cpd_certificate, CertificateDeleter>;
using ReportPtr = std::unique_ptr<cpd_report, ReportDeleter>;

struct ToleranceFlags {
  std::optional<double> abs;
  std::optional<double> rel;

  bool given() const { return abs.has_value() || rel.has_value(); }

  cpd_tolerance resolve(const cpd_semigroup* g = nullptr) const {
    cpd_tolerance t = cpd_default_tolerance();
    if (g != nullptr) cpd_semigroup_file_tolerance(g, &t);
    if (abs) t.abs = *abs;
    if (rel) t.rel = *rel;
    return t;
  }
};

void add_tolerance_flags(CLI::App* cmd, ToleranceFlags& flags) {
  cmd->add_option("--tol-abs", flags.abs, "absolute tolerance")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tol-rel", flags.rel, "relative tolerance")->check(CLI::NonNegativeNumber);
}

void print_report(const cpd_report* r) {
  const size_t n = cpd_report_check_count(r);
  size_t width = 5;
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    cpd_report_check(r, i, &name, nullptr, nullptr, nullptr);
    width = std::max(width, std::string(name).size());
  }
  std::cout << "== " << cpd_report_suite(r) << " ==\n";
  std::cout << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(12) << "residual"
            << "  " << std::setw(12) << "threshold" << "  result\n";
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    double residual = 0.0;
    double threshold = 0.0;
    int pass = 0;
    cpd_report_check(r, i, &name, &residual, &threshold, &pass);
    residual += 0.0;  // print -0 as 0
    std::cout << std::left << std::setw(static_cast<int>(width)) << name << "  " << std::scientific
              << std::setprecision(3) << std::setw(12) << residual << "  " << std::setw(12) << threshold << "  "
              << (pass ? "PASS" : "FAIL") << '\n';
  }
  std::cout.unsetf(std::ios::floatfield);
  for (size_t i = 0; i < cpd_report_note_count(r); ++i) std::cout << "note: " << cpd_report_note(r, i) << '\n';
  std::cout << "overall: " << (cpd_report_overall(r) ? "PASS" : "FAIL") << "\n\n";
}

// Prints (table or JSON) and optionally saves each report; returns the exit code.
int emit(const std::vector<ReportPtr>& reports, bool json, const std::string& out_dir) {
  bool ok = true;
  if (json) std::cout << "[\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    const cpd_report* r = reports[i].get();
    ok = ok && cpd_report_overall(r);
    if (json) {
      char* text = nullptr;
      check(cpd_report_to_json(r, &text));
      std::cout << text << (i + 1 < reports.size() ? ",\n" : "\n");
      cpd_string_free(text);
    } else {
      print_report(r);
    }
    if (!out_dir.empty()) {
      std::string file = cpd_report_suite(r);
      for (char& c : file) {
        if (c == ' ') c = '_';
      }
      const auto path = std::filesystem::path(out_dir) / (file + ".report.json");
      check(cpd_report_save(r, path.string().c_str()));
    }
  }
  if (json) std::cout << "]\n";
  return ok ? kPass : kCheckFailure;
}

struct VerifyArgs {
  std::string semigroup;
  std::string cert;
  std::string unitalized;
  bool law = false;
  bool markov = false;
  bool dilation = false;
  bool strong = false;
  bool minimal = false;
  bool corner = false;
  std::vector<size_t> horizon;
  std::string out;
  bool json = false;
  ToleranceFlags tol;
};

int run_verify(const VerifyArgs& a) {
  if (!(a.law || a.markov || a.dilation || a.strong || a.minimal || a.corner)) {
    throw InputError{"no suite selected (use --law, --markov, --dilation, --strong, --minimal or --corner)"};
  }
  const bool needs_cert = a.dilation || a.strong || a.minimal || a.corner;
  if (needs_cert && a.cert.empty()) throw InputError{"the selected suite needs --cert"};
  if (a.corner && a.unitalized.empty()) throw InputError{"--corner needs --unitalized"};

  cpd_semigroup* raw_g = nullptr;
  std::optional<cpd_tolerance> override_tol;
  if (a.tol.given()) override_tol = a.tol.resolve();
  check(cpd_semigroup_load(a.semigroup.c_str(), override_tol ? &*override_tol : nullptr, &raw_g));
  SemigroupPtr g(raw_g);
  const cpd_tolerance tol = a.tol.resolve(g.get());

  CertificatePtr cert;
  if (!a.cert.empty()) {
    cpd_certificate* raw = nullptr;
    check(cpd_certificate_load(a.cert.c_str(), tol, &raw));
    cert.reset(raw);
    if (!a.horizon.empty()) check(cpd_certificate_set_horizon(cert.get(), a.horizon.data(), a.horizon.size()));
  }
  if (!a.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(a.out, ec);
    if (ec) throw InputError{"cannot create " + a.out + ": " + ec.message()};
  }

  std::vector<ReportPtr> reports;
  auto collect = [&](auto&& call) {
    cpd_report* r = nullptr;
    check(call(&r));
    reports.emplace_back(r);
  };
  if (a.law) {
    std::vector<size_t> box = a.horizon;
    if (box.empty()) box.assign(cpd_semigroup_arity(g.get()), 2);
    collect([&](cpd_report** r) { return cpd_verify_law(g.get(), box.data(), box.size(), tol, r); });
  }
  if (a.markov) {
    collect([&](cpd_report** r) { return cpd_verify_markov(g.get(), tol, r); });
    if (cert && cpd_report_overall(reports.back().get())) {
      collect([&](cpd_report** r) { return cpd_verify_unital_equivalence(cert.get(), g.get(), tol, r); });
    }
  }
  if (a.dilation) collect([&](cpd_report** r) { return cpd_verify_dilation(cert.get(), g.get(), tol, r); });
  if (a.strong) collect([&](cpd_report** r) { return cpd_verify_strong(cert.get(), g.get(), tol, r); });
  if (a.minimal) collect([&](cpd_report** r) { return cpd_verify_minimal(cert.get(), g.get(), tol, r); });
  if (a.corner) {
    cpd_semigroup* raw_gu = nullptr;
    check(cpd_semigroup_load(a.unitalized.c_str(), override_tol ? &*override_tol : nullptr, &raw_gu));
    SemigroupPtr gu(raw_gu);
    cpd_certificate* restricted = nullptr;
    collect([&](cpd_report** r) { return cpd_verify_corner(g.get(), gu.get(), cert.get(), tol, r, &restricted); });
    CertificatePtr keep(restricted);
    if (!a.out.empty()) {
      const auto path = std::filesystem::path(a.out) / "restricted.certificate.json";
      check(cpd_certificate_save(keep.get(), path.string().c_str()));
    }
  }
  return emit(reports, a.json, a.out);
}

int run_unitalize(const std::string& in, const std::string& out, const ToleranceFlags& flags) {
  cpd_semigroup* raw = nullptr;
  std::optional<cpd_tolerance> override_tol;
  if (flags.given()) override_tol = flags.resolve();
  check(cpd_semigroup_load(in.c_str(), override_tol ? &*override_tol : nullptr, &raw));
  SemigroupPtr g(raw);
  cpd_semigroup* raw_u = nullptr;
  check(cpd_semigroup_unitalize(g.get(), flags.resolve(g.get()), &raw_u));
  SemigroupPtr gu(raw_u);
  check(cpd_semigroup_save(gu.get(), out.c_str()));
  std::cout << "wrote " << out << " (dimension " << cpd_semigroup_dim(gu.get()) << ", "
            << cpd_semigroup_arity(gu.get()) << " generators)\n";
  return kPass;
}

// Demo failures other than a bad name are internal check failures (exit 1).
void check_demo(cpd_status status) {
  if (status == CPD_OK) return;
  if (status == CPD_ERR_INVALID_ARGUMENT || status == CPD_ERR_IO) check(status);
  std::cerr << "error: " << cpd_last_error() << '\n';
  throw CheckFailure{};
}

int run_demo(const std::string& name, const std::string& out, bool json, const ToleranceFlags& flags) {
  cpd_report* r = nullptr;
  check_demo(cpd_demo_run(name.c_str(), out.c_str(), flags.resolve(), &r));
  std::vector<ReportPtr> reports;
  reports.emplace_back(r);
  if (!json) std::cout << "files written to " << out << "\n\n";
  return emit(reports, json, "");
}

int run_gallery(const std::string& out, bool json, const ToleranceFlags& flags) {
  cpd_report* r = nullptr;
  check_demo(cpd_export_gallery(out.c_str(), flags.resolve(), &r));
  std::vector<ReportPtr> reports;
  reports.emplace_back(r);
  if (!json) std::cout << "gallery written to " << out << "\n\n";
  return emit(reports, json, "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for CP-semigroups and their dilations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cpd_version()));

  VerifyArgs verify;
  CLI::App* v = app.add_subcommand("verify", "run verification suites on a semigroup file");
  v->add_option("semigroup", verify.semigroup, "semigroup JSON file")->required();
  v->add_option("--cert", verify.cert, "certificate JSON file");
  v->add_option("--unitalized", verify.unitalized, "unitalized semigroup file (for --corner)");
  v->add_flag("--law", verify.law, "semigroup law on the horizon box");
  v->add_flag("--markov", verify.markov, "unitality; with --cert also the unital equivalence checks");
  v->add_flag("--dilation", verify.dilation, "dilation identity");
  v->add_flag("--strong", verify.strong, "strong dilation identity");
  v->add_flag("--minimal", verify.minimal, "minimality by both routes");
  v->add_flag("--corner", verify.corner, "corner restriction of a dilation of the unitalized semigroup");
  v->add_option("--horizon", verify.horizon, "horizon a,b,c (overrides the certificate)")->delimiter(',');
  v->add_option("--out", verify.out, "directory for JSON reports");
  v->add_flag("--json", verify.json, "print JSON instead of a table");
  add_tolerance_flags(v, verify.tol);

  std::string in_path;
  std::string out_path;
  ToleranceFlags unitalize_tol;
  CLI::App* u = app.add_subcommand("unitalize", "write the unitalization of a semigroup file");
  u->add_option("input", in_path, "semigroup JSON file")->required();
  u->add_option("output", out_path, "output file")->required();
  add_tolerance_flags(u, unitalize_tol);

  std::string demo_name;
  std::string demo_out = "demo-out";
  bool demo_json = false;
  ToleranceFlags demo_tol;
  CLI::App* d = app.add_subcommand("demo", "run a named demo (parrott, markov6, schaffer, tower, cross)");
  d->add_option("name", demo_name, "demo name")->required();
  d->add_option("--out", demo_out, "output directory");
  d->add_flag("--json", demo_json, "print JSON instead of a table");
  add_tolerance_flags(d, demo_tol);

  std::string gallery_out = "gallery";
  bool gallery_json = false;
  ToleranceFlags gallery_tol;
  CLI::App* x = app.add_subcommand("export-gallery", "run every demo and write all files");
  x->add_option("--out", gallery_out, "output directory");
  x->add_flag("--json", gallery_json, "print JSON instead of a table");
  add_tolerance_flags(x, gallery_tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: invalid argument values: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (v->parsed()) return run_verify(verify);
    if (u->parsed()) return run_unitalize(in_path, out_path, unitalize_tol);
    if (d->parsed()) return run_demo(demo_name, demo_out, demo_json, demo_tol);
    if (x->parsed()) return run_gallery(gallery_out, gallery_json, gallery_tol);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kInputError;
  } catch (const CheckFailure&) {
    return kCheckFailure;
  }
  return kInputError;
}
