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


/* C interface of the rydtqd library. All handles are opaque; every call returns a status
 * code and, on failure, leaves a message retrievable through rtqd_last_error() on the
 * calling thread. Frequencies in reports are quoted as value / 2pi in MHz. */

#ifndef RYDTQD_RYDTQD_H_
#define RYDTQD_RYDTQD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RTQD_API __declspec(dllexport)
#else
#define RTQD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rtqd_status {
  RTQD_OK = 0,
  RTQD_INVALID_ARGUMENT = 1,
  RTQD_CONFIG = 2,
  RTQD_IO = 3,
  RTQD_NUMERIC = 4,
  RTQD_INFEASIBLE = 5,
  RTQD_INTERNAL = 6
} rtqd_status;

typedef struct rtqd_config rtqd_config;
typedef struct rtqd_report rtqd_report;

RTQD_API const char* rtqd_version(void);
RTQD_API const char* rtqd_status_name(rtqd_status status);
/* Message of the last failed call on this thread; empty after a success. */
RTQD_API const char* rtqd_last_error(void);

RTQD_API rtqd_status rtqd_config_load(const char* path, rtqd_config** out);
RTQD_API rtqd_status rtqd_config_parse(const char* text, rtqd_config** out);
/* Overrides one key with the same syntax as a config line, e.g. ("seed", "7"). */
RTQD_API rtqd_status rtqd_config_set(rtqd_config* config, const char* key, const char* value);
/* Writes the 16-hex-digit config hash plus a terminator; `size` must be at least 17. */
RTQD_API rtqd_status rtqd_config_hash(const rtqd_config* config, char* buffer, size_t size);
RTQD_API void rtqd_config_free(rtqd_config* config);

/* Pipelines. Files are written to the config's out_dir when it is non-empty. */
RTQD_API rtqd_status rtqd_simulate(const rtqd_config* config, rtqd_report** out);
RTQD_API rtqd_status rtqd_scan(const rtqd_config* config, rtqd_report** out);
RTQD_API rtqd_status rtqd_optimize(const rtqd_config* config, rtqd_report** out);
RTQD_API rtqd_status rtqd_waveform(const rtqd_config* config, rtqd_report** out);
/* model is "power" or "logistic"; out_dir may be NULL or empty. */
RTQD_API rtqd_status rtqd_fit(const char* csv_path, const char* model, const char* out_dir, rtqd_report** out);

/* JSON text of a report, owned by the report. */
RTQD_API rtqd_status rtqd_report_json(const rtqd_report* report, const char** json);
/* Numeric entry addressed by a JSON pointer such as "/report/F0". */
RTQD_API rtqd_status rtqd_report_number(const rtqd_report* report, const char* pointer, double* value);
RTQD_API void rtqd_report_free(rtqd_report* report);

#ifdef __cplusplus
}
#endif

#endif /* RYDTQD_RYDTQD_H_ */
