#include "projlat/projlat.h"

#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "projlat/lattice.hpp"
#include "projlat/suite.hpp"
#include "projlat/two_projection.hpp"

struct projlat_element {
  projlat::Element value;
};

namespace {

thread_local std::string last_error;

projlat_status fail(projlat_status s, const char* what) {
  last_error = what;
  return s;
}

template <class F>
projlat_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return PROJLAT_OK;
  } catch (const projlat::Error& e) {
    return fail(static_cast<projlat_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PROJLAT_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PROJLAT_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

projlat_element* wrap(projlat::Element x) { return new projlat_element{std::move(x)}; }

projlat::Projection as_projection(const projlat_element* x) { return projlat::Projection(x->value); }

}  // namespace

#define PROJLAT_REQUIRE(cond)                                                  \
  do {                                                                         \
    if (!(cond)) return fail(PROJLAT_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

extern "C" {

const char* projlat_version(void) {
  static const std::string v = projlat::library_version();
  return v.c_str();
}

const char* projlat_last_error(void) { return last_error.c_str(); }

const char* projlat_status_name(projlat_status status) {
  if (status == PROJLAT_INVALID_ARGUMENT) return "InvalidArgument";
  static thread_local std::string name;
  name = std::string(projlat::to_string(static_cast<projlat::ErrorCode>(status)));
  return name.c_str();
}

void projlat_string_free(char* s) { delete[] s; }

projlat_status projlat_element_from_json(const char* json, projlat_element** out) {
  PROJLAT_REQUIRE(json && out);
  return guarded([&] { *out = wrap(projlat::element_from_json(projlat::parse_json_text(json, "element"))); });
}

projlat_status projlat_element_to_json(const projlat_element* x, char** out) {
  PROJLAT_REQUIRE(x && out);
  return guarded([&] { *out = copy_string(projlat::to_json(x->value).dump()); });
}

void projlat_element_free(projlat_element* x) { delete x; }

projlat_status projlat_operator_norm(const projlat_element* x, double* out) {
  PROJLAT_REQUIRE(x && out);
  return guarded([&] { *out = projlat::operator_norm(x->value); });
}

projlat_status projlat_range_projection(const projlat_element* x, projlat_element** out) {
  PROJLAT_REQUIRE(x && out);
  return guarded([&] { *out = wrap(projlat::range_projection(x->value).element()); });
}

projlat_status projlat_meet(const projlat_element* e, const projlat_element* f, projlat_element** out) {
  PROJLAT_REQUIRE(e && f && out);
  return guarded([&] { *out = wrap(projlat::meet(as_projection(e), as_projection(f)).element()); });
}

projlat_status projlat_join(const projlat_element* e, const projlat_element* f, projlat_element** out) {
  PROJLAT_REQUIRE(e && f && out);
  return guarded([&] { *out = wrap(projlat::join(as_projection(e), as_projection(f)).element()); });
}

projlat_status projlat_halmos_form(const projlat_element* e, const projlat_element* f, char** out) {
  PROJLAT_REQUIRE(e && f && out);
  return guarded([&] {
    const projlat::HalmosForm form = projlat::halmos_form(as_projection(e), as_projection(f));
    const projlat::Json j{{"a_values", form.a_values},
                          {"dimension_split", form.dimension_split},
                          {"conjugating_unitary", projlat::to_json(form.conjugating_unitary)}};
    *out = copy_string(j.dump());
  });
}

projlat_status projlat_isoclinic(const projlat_element* e, const projlat_element* f, projlat_element** g,
                                 double* alpha) {
  PROJLAT_REQUIRE(e && f && g && alpha);
  return guarded([&] {
    const projlat::IsoclinicResult r = projlat::isoclinic_projection(as_projection(e), as_projection(f));
    *alpha = r.alpha;
    *g = wrap(r.g.element());
  });
}

projlat_status projlat_config_normalize(const char* text, const char* origin, char** out) {
  PROJLAT_REQUIRE(text && out);
  return guarded([&] {
    const projlat::SuiteConfig config =
        projlat::config_from_json(projlat::parse_json_text(text, origin ? origin : "config"));
    projlat::Json j = projlat::config_echo(config);
    j["out"] = config.out;
    *out = copy_string(j.dump(2));
  });
}

projlat_status projlat_run_suite(const char* config_json, char** report, int* all_pass) {
  PROJLAT_REQUIRE(config_json && report && all_pass);
  return guarded([&] {
    const projlat::SuiteConfig config =
        projlat::config_from_json(projlat::parse_json_text(config_json, "config"));
    const projlat::Report r = projlat::run_suite(config);
    *all_pass = r.all_pass() ? 1 : 0;
    *report = copy_string(r.dump());
  });
}

projlat_status projlat_gen_instance(uint64_t seed, const char* spec, const char* out_dir, char** written) {
  PROJLAT_REQUIRE(spec && out_dir && written);
  return guarded([&] {
    const auto files = projlat::gen_instance(seed, spec);
    projlat::Json paths = projlat::Json::array();
    for (const auto& f : files) {
      const std::string path = (std::filesystem::path(out_dir) / f.name).string();
      projlat::write_text_file(path, f.content.dump(2) + "\n");
      paths.push_back(path);
    }
    *written = copy_string(paths.dump());
  });
}

}  // extern "C"
