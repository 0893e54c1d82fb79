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


#pragma once

#include <json.hpp>
#include <string>

#include "rydtqd/config.hpp"

namespace rydtqd::pipeline {

// Each pipeline returns a structured summary; CSV and JSON files go to cfg.out_dir when set.
nlohmann::json simulate(const config::ExperimentConfig& cfg);
nlohmann::json scan(const config::ExperimentConfig& cfg);
nlohmann::json optimize(const config::ExperimentConfig& cfg);
nlohmann::json fit(const std::string& csv_path, const std::string& model, const std::string& out_dir);
nlohmann::json waveform(const config::ExperimentConfig& cfg);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rydtqd::pipeline
