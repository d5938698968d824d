// Copyright 2026 The hgpd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Check reports. Residuals are stored rounded to seven significant digits,
// the precision of the text rendering, so text and JSON carry the same value.

#include <optional>
#include <string>
#include <vector>

#include "hgpd/serialize.hpp"

namespace hgpd {

enum class Status { Pass, Warn, Fail };

const char* status_name(Status s);

struct CheckItem {
  std::string id;
  Status status = Status::Pass;
  std::optional<double> residual;  // absent for boolean checks and warnings
  std::string detail;
  Json witness;  // null when absent
};

class CheckReport {
 public:
  CheckReport(std::string suite, std::string target);

  const std::string& suite() const { return suite_; }
  const std::string& target() const { return target_; }
  const std::vector<CheckItem>& items() const { return items_; }

  void add(CheckItem item);
  // Pass when residual <= tol, Fail otherwise.
  void add_residual(std::string id, double residual, double tol, std::string detail = {});
  void add_bool(std::string id, bool ok, std::string detail = {}, Json witness = nullptr);
  void add_warning(std::string id, std::string detail, Json witness = nullptr);
  void merge(const CheckReport& other, const std::string& prefix);

  bool failed() const;
  int exit_code() const { return failed() ? 1 : 0; }

  std::string to_text() const;
  Json to_json() const;

 private:
  std::string suite_;
  std::string target_;
  std::vector<CheckItem> items_;
};

std::string format_residual(double r);
double round_residual(double r);

}  // namespace hgpd
