// Copyright 2025 The rydtqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rydtqd/rydtqd.h"

#include <filesystem>
#include <json.hpp>
#include <new>
#include <string>

#include "pipeline.hpp"
#include "rydtqd/config.hpp"

struct rtqd_config {
  rydtqd::config::ExperimentConfig cfg;
};

struct rtqd_report {
  nlohmann::json data;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

rtqd_status fail(rtqd_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Maps library exceptions onto status codes.
template <class F>
rtqd_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return RTQD_OK;
  } catch (const rydtqd::config::ConfigError& e) {
    return fail(RTQD_CONFIG, e.what());
  } catch (const rydtqd::pipeline::IoError& e) {
    return fail(RTQD_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(RTQD_IO, e.what());
  } catch (const rydtqd::InvalidArgument& e) {
    return fail(RTQD_INVALID_ARGUMENT, e.what());
  } catch (const rydtqd::InfeasibleError& e) {
    return fail(RTQD_INFEASIBLE, e.what());
  } catch (const rydtqd::NumericError& e) {
    return fail(RTQD_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RTQD_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RTQD_INTERNAL, e.what());
  }
}

rtqd_status make_report(nlohmann::json j, rtqd_report** out) {
  auto* r = new rtqd_report{std::move(j), {}};
  r->text = r->data.dump(2);
  *out = r;
  return RTQD_OK;
}

template <class F>
rtqd_status run_pipeline(const rtqd_config* config, rtqd_report** out, F&& f) {
  if (!config || !out) return fail(RTQD_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { make_report(f(config->cfg), out); });
}

}  // namespace

extern "C" {

const char* rtqd_version(void) { return "1.0.0"; }

const char* rtqd_status_name(rtqd_status s) {
  switch (s) {
    case RTQD_OK: return "ok";
    case RTQD_INVALID_ARGUMENT: return "invalid argument";
    case RTQD_CONFIG: return "config error";
    case RTQD_IO: return "io error";
    case RTQD_NUMERIC: return "numeric error";
    case RTQD_INFEASIBLE: return "infeasible";
    case RTQD_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* rtqd_last_error(void) { return g_last_error.c_str(); }

rtqd_status rtqd_config_load(const char* path, rtqd_config** out) {
  if (!path || !out) return fail(RTQD_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new rtqd_config{rydtqd::config::load(path)}; });
}

rtqd_status rtqd_config_parse(const char* text, rtqd_config** out) {
  if (!text || !out) return fail(RTQD_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new rtqd_config{rydtqd::config::parse(text)}; });
}

rtqd_status rtqd_config_set(rtqd_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(RTQD_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    rydtqd::config::ExperimentConfig next = config->cfg;
    rydtqd::config::apply(next, key, value);
    try {
      next.validate();
    } catch (const rydtqd::InvalidArgument& e) {
      throw rydtqd::config::ConfigError(0, key, e.what());
    }
    config->cfg = std::move(next);
  });
}

rtqd_status rtqd_config_hash(const rtqd_config* config, char* buffer, size_t size) {
  if (!config || !buffer) return fail(RTQD_INVALID_ARGUMENT, "null argument");
  if (size < 17) return fail(RTQD_INVALID_ARGUMENT, "hash buffer needs 17 bytes");
  return guarded([&] {
    const std::string h = config->cfg.hash();
    h.copy(buffer, 16);
    buffer[16] = '\0';
  });
}

void rtqd_config_free(rtqd_config* config) { delete config; }

rtqd_status rtqd_simulate(const rtqd_config* config, rtqd_report** out) {
  return run_pipeline(config, out, rydtqd::pipeline::simulate);
}

rtqd_status rtqd_scan(const rtqd_config* config, rtqd_report** out) {
  return run_pipeline(config, out, rydtqd::pipeline::scan);
}

rtqd_status rtqd_optimize(const rtqd_config* config, rtqd_report** out) {
  return run_pipeline(config, out, rydtqd::pipeline::optimize);
}

rtqd_status rtqd_waveform(const rtqd_config* config, rtqd_report** out) {
  return run_pipeline(config, out, rydtqd::pipeline::waveform);
}

rtqd_status rtqd_fit(const char* csv_path, const char* model, const char* out_dir, rtqd_report** out) {
  if (!csv_path || !model || !out) return fail(RTQD_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { make_report(rydtqd::pipeline::fit(csv_path, model, out_dir ? out_dir : ""), out); });
}

rtqd_status rtqd_report_json(const rtqd_report* report, const char** json) {
  if (!report || !json) return fail(RTQD_INVALID_ARGUMENT, "null argument");
  *json = report->text.c_str();
  g_last_error.clear();
  return RTQD_OK;
}

rtqd_status rtqd_report_number(const rtqd_report* report, const char* pointer, double* value) {
  if (!report || !pointer || !value) return fail(RTQD_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const nlohmann::json* jp;
    try {
      jp = &report->data.at(nlohmann::json::json_pointer(pointer));
    } catch (const nlohmann::json::exception& e) {
      throw rydtqd::InvalidArgument(std::string("no entry at ") + pointer + ": " + e.what());
    }
    const nlohmann::json& j = *jp;
    if (!j.is_number()) throw rydtqd::InvalidArgument(std::string(pointer) + " is not a number");
    *value = j.get<double>();
  });
}

void rtqd_report_free(rtqd_report* report) { delete report; }

}  // extern "C"
