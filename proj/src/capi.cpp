#include "cpdil/cpdil.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <optional>
#include <string>

#include "cpdil/dilation.hpp"
#include "cpdil/error.hpp"
#include "cpdil/gallery.hpp"
#include "cpdil/io.hpp"
#include "cpdil/semigroup.hpp"

struct cpd_semigroup {
  cpdil::CpSemigroup semigroup;
  std::vector<std::string> names;
  std::optional<cpdil::Tolerance> file_tolerance;
};

struct cpd_certificate {
  cpdil::DilationCertificate certificate;
};

struct cpd_report {
  cpdil::VerificationReport report;
};

namespace {

thread_local std::string last_error;

cpd_status fail(cpd_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
cpd_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return CPD_OK;
  } catch (const cpdil::Error& e) {
    return fail(static_cast<cpd_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CPD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CPD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CPD_ERR_INTERNAL, "unknown exception");
  }
}

cpdil::Tolerance convert(cpd_tolerance t) {
  cpdil::Tolerance out{t.abs, t.rel};
  out.validate();
  return out;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw cpdil::Error(cpdil::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

cpdil::MultiIndex to_index(const size_t* values, size_t len) {
  if (len > 0) require(values, "index array");
  return cpdil::MultiIndex(std::vector<std::size_t>(values, values + len));
}

template <typename F>
cpd_status make_report(cpd_report** out, F&& produce) {
  return guarded([&] {
    require(out, "output pointer");
    *out = nullptr;
    *out = new cpd_report{produce()};
  });
}

}  // namespace

extern "C" {

const char* cpd_version(void) { return "1.0.0"; }

cpd_tolerance cpd_default_tolerance(void) {
  const cpdil::Tolerance t;
  return {t.abs, t.rel};
}

const char* cpd_status_name(cpd_status status) {
  if (status == CPD_OK) return "Ok";
  if (status == CPD_ERR_INTERNAL) return "Internal";
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(cpdil::ErrorCode::InvalidArgument)) {
    return cpdil::to_string(static_cast<cpdil::ErrorCode>(code));
  }
  return "Unknown";
}

const char* cpd_last_error(void) { return last_error.c_str(); }

void cpd_string_free(char* s) { std::free(s); }

cpd_status cpd_semigroup_load(const char* path, const cpd_tolerance* tol, cpd_semigroup** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    *out = nullptr;
    std::optional<cpdil::Tolerance> t;
    if (tol != nullptr) t = convert(*tol);
    cpdil::SemigroupDocument doc = cpdil::load_semigroup(path, t);
    *out = new cpd_semigroup{std::move(doc.semigroup), std::move(doc.names), doc.tolerance};
  });
}

cpd_status cpd_semigroup_save(const cpd_semigroup* g, const char* path) {
  return guarded([&] {
    require(g, "semigroup");
    require(path, "path");
    cpdil::save_semigroup(path, g->semigroup, g->names, g->file_tolerance);
  });
}

void cpd_semigroup_free(cpd_semigroup* g) { delete g; }

size_t cpd_semigroup_dim(const cpd_semigroup* g) { return g == nullptr ? 0 : g->semigroup.dim(); }

size_t cpd_semigroup_arity(const cpd_semigroup* g) { return g == nullptr ? 0 : g->semigroup.arity(); }

int cpd_semigroup_file_tolerance(const cpd_semigroup* g, cpd_tolerance* out) {
  if (g == nullptr || !g->file_tolerance) return 0;
  if (out != nullptr) *out = {g->file_tolerance->abs, g->file_tolerance->rel};
  return 1;
}

cpd_status cpd_semigroup_unitalize(const cpd_semigroup* g, cpd_tolerance tol, cpd_semigroup** out) {
  return guarded([&] {
    require(g, "semigroup");
    require(out, "output pointer");
    *out = nullptr;
    *out = new cpd_semigroup{cpdil::unitalize(g->semigroup, convert(tol)), g->names, g->file_tolerance};
  });
}

cpd_status cpd_certificate_load(const char* path, cpd_tolerance tol, cpd_certificate** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    *out = nullptr;
    *out = new cpd_certificate{cpdil::load_certificate(path, convert(tol))};
  });
}

cpd_status cpd_certificate_save(const cpd_certificate* c, const char* path) {
  return guarded([&] {
    require(c, "certificate");
    require(path, "path");
    cpdil::save_certificate(path, c->certificate);
  });
}

void cpd_certificate_free(cpd_certificate* c) { delete c; }

size_t cpd_certificate_h_dim(const cpd_certificate* c) { return c == nullptr ? 0 : c->certificate.h_dim; }

size_t cpd_certificate_k_dim(const cpd_certificate* c) { return c == nullptr ? 0 : c->certificate.k_dim; }

cpd_status cpd_certificate_set_horizon(cpd_certificate* c, const size_t* horizon, size_t len) {
  return guarded([&] {
    require(c, "certificate");
    cpdil::MultiIndex h = to_index(horizon, len);
    if (h.size() != c->certificate.theta.size()) {
      throw cpdil::Error(cpdil::ErrorCode::ArityMismatch,
                         "horizon has " + std::to_string(h.size()) + " entries, certificate has " +
                             std::to_string(c->certificate.theta.size()) + " generators");
    }
    c->certificate.horizon = std::move(h);
  });
}

cpd_status cpd_verify_law(const cpd_semigroup* g, const size_t* box, size_t len, cpd_tolerance tol,
                          cpd_report** out) {
  return make_report(out, [&] {
    require(g, "semigroup");
    return cpdil::verify_semigroup_law(g->semigroup, to_index(box, len), convert(tol));
  });
}

cpd_status cpd_verify_markov(const cpd_semigroup* g, cpd_tolerance tol, cpd_report** out) {
  return make_report(out, [&] {
    require(g, "semigroup");
    return cpdil::markov_report(g->semigroup, convert(tol));
  });
}

cpd_status cpd_verify_unital_equivalence(const cpd_certificate* c, const cpd_semigroup* g, cpd_tolerance tol,
                                         cpd_report** out) {
  return make_report(out, [&] {
    require(c, "certificate");
    require(g, "semigroup");
    return cpdil::unital_equivalence_check(c->certificate, g->semigroup, convert(tol));
  });
}

cpd_status cpd_verify_dilation(const cpd_certificate* c, const cpd_semigroup* g, cpd_tolerance tol,
                               cpd_report** out) {
  return make_report(out, [&] {
    require(c, "certificate");
    require(g, "semigroup");
    return cpdil::is_dilation(c->certificate, g->semigroup, convert(tol));
  });
}

cpd_status cpd_verify_strong(const cpd_certificate* c, const cpd_semigroup* g, cpd_tolerance tol,
                             cpd_report** out) {
  return make_report(out, [&] {
    require(c, "certificate");
    require(g, "semigroup");
    return cpdil::is_strong_dilation(c->certificate, g->semigroup, convert(tol));
  });
}

cpd_status cpd_verify_minimal(const cpd_certificate* c, const cpd_semigroup* g, cpd_tolerance tol,
                              cpd_report** out) {
  return make_report(out, [&] {
    require(c, "certificate");
    require(g, "semigroup");
    return cpdil::is_minimal(c->certificate, g->semigroup, convert(tol));
  });
}

cpd_status cpd_verify_corner(const cpd_semigroup* g, const cpd_semigroup* gu, const cpd_certificate* cu,
                             cpd_tolerance tol, cpd_report** out, cpd_certificate** restricted) {
  return guarded([&] {
    require(g, "semigroup");
    require(gu, "unitalized semigroup");
    require(cu, "certificate");
    require(out, "output pointer");
    *out = nullptr;
    if (restricted != nullptr) *restricted = nullptr;
    cpdil::CornerRestriction cr = cpdil::corner_restriction(g->semigroup, gu->semigroup, cu->certificate, convert(tol));
    auto* report = new cpd_report{std::move(cr.report)};
    if (restricted != nullptr) {
      try {
        *restricted = new cpd_certificate{std::move(cr.certificate)};
      } catch (...) {
        delete report;
        throw;
      }
    }
    *out = report;
  });
}

const char* cpd_report_suite(const cpd_report* r) { return r == nullptr ? "" : r->report.suite().c_str(); }

int cpd_report_overall(const cpd_report* r) { return r != nullptr && r->report.overall() ? 1 : 0; }

size_t cpd_report_check_count(const cpd_report* r) { return r == nullptr ? 0 : r->report.checks().size(); }

cpd_status cpd_report_check(const cpd_report* r, size_t i, const char** name, double* residual, double* threshold,
                            int* pass) {
  return guarded([&] {
    require(r, "report");
    if (i >= r->report.checks().size()) {
      throw cpdil::Error(cpdil::ErrorCode::InvalidArgument, "check index " + std::to_string(i) + " out of range");
    }
    const cpdil::Check& c = r->report.checks()[i];
    if (name != nullptr) *name = c.name.c_str();
    if (residual != nullptr) *residual = c.residual;
    if (threshold != nullptr) *threshold = c.threshold;
    if (pass != nullptr) *pass = c.pass ? 1 : 0;
  });
}

size_t cpd_report_note_count(const cpd_report* r) { return r == nullptr ? 0 : r->report.notes().size(); }

const char* cpd_report_note(const cpd_report* r, size_t i) {
  if (r == nullptr || i >= r->report.notes().size()) return nullptr;
  return r->report.notes()[i].c_str();
}

cpd_status cpd_report_to_json(const cpd_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "output pointer");
    *out = duplicate(cpdil::report_to_json(r->report).dump(1));
  });
}

cpd_status cpd_report_save(const cpd_report* r, const char* path) {
  return guarded([&] {
    require(r, "report");
    require(path, "path");
    cpdil::save_json(path, cpdil::report_to_json(r->report));
  });
}

void cpd_report_free(cpd_report* r) { delete r; }

size_t cpd_demo_count(void) { return cpdil::demo_names().size(); }

const char* cpd_demo_name(size_t i) {
  const auto& names = cpdil::demo_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

cpd_status cpd_demo_run(const char* name, const char* out_dir, cpd_tolerance tol, cpd_report** out) {
  return make_report(out, [&] {
    require(name, "demo name");
    require(out_dir, "output directory");
    return cpdil::run_demo(name, out_dir, convert(tol)).report;
  });
}

cpd_status cpd_export_gallery(const char* out_dir, cpd_tolerance tol, cpd_report** out) {
  return make_report(out, [&] {
    require(out_dir, "output directory");
    return cpdil::export_gallery(out_dir, convert(tol)).report;
  });
}

}  // extern "C"
