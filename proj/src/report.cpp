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

#include "hgpd/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hgpd {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Warn: return "warn";
    case Status::Fail: return "fail";
  }
  return "fail";
}

std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", r);
  return buf;
}

double round_residual(double r) {
  if (!std::isfinite(r)) return r;
  return std::stod(format_residual(r));
}

CheckReport::CheckReport(std::string suite, std::string target)
    : suite_(std::move(suite)), target_(std::move(target)) {}

void CheckReport::add(CheckItem item) {
  if (item.residual) item.residual = round_residual(*item.residual);
  items_.push_back(std::move(item));
}

void CheckReport::add_residual(std::string id, double residual, double tol, std::string detail) {
  // NaN compares false and therefore fails.
  add({std::move(id), residual <= tol ? Status::Pass : Status::Fail, residual, std::move(detail),
       nullptr});
}

void CheckReport::add_bool(std::string id, bool ok, std::string detail, Json witness) {
  add({std::move(id), ok ? Status::Pass : Status::Fail, std::nullopt, std::move(detail), std::move(witness)});
}

void CheckReport::add_warning(std::string id, std::string detail, Json witness) {
  add({std::move(id), Status::Warn, std::nullopt, std::move(detail), std::move(witness)});
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (CheckItem item : other.items_) {
    item.id = prefix + item.id;
    items_.push_back(std::move(item));
  }
}

bool CheckReport::failed() const {
  return std::any_of(items_.begin(), items_.end(),
                     [](const CheckItem& i) { return i.status == Status::Fail; });
}

std::string CheckReport::to_text() const {
  std::ostringstream out;
  out << "suite " << suite_ << " on " << target_ << "\n";
  std::size_t width = 0;
  for (const auto& i : items_) width = std::max(width, i.id.size());
  std::size_t fails = 0, warns = 0;
  for (const auto& i : items_) {
    std::string line = "  [" + std::string(status_name(i.status)) + "] " + i.id +
                       std::string(width - i.id.size(), ' ');
    if (i.residual) line += "  residual " + format_residual(*i.residual);
    if (!i.detail.empty()) line += "  " + i.detail;
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << "\n";
    if (!i.witness.is_null()) out << "      witness " << i.witness.dump() << "\n";
    fails += i.status == Status::Fail;
    warns += i.status == Status::Warn;
  }
  out << (fails ? "FAIL" : "PASS") << ": " << items_.size() << " checks, " << fails
      << " failed, " << warns << " warnings\n";
  return out.str();
}

Json CheckReport::to_json() const {
  Json checks = Json::array();
  for (const auto& i : items_) {
    Json c{{"id", i.id}, {"status", status_name(i.status)}};
    if (i.residual) c["residual"] = *i.residual;
    if (!i.detail.empty()) c["detail"] = i.detail;
    if (!i.witness.is_null()) c["witness"] = i.witness;
    checks.push_back(std::move(c));
  }
  return Json{{"suite", suite_},
              {"target", target_},
              {"status", failed() ? "fail" : "pass"},
              {"exit", exit_code()},
              {"checks", std::move(checks)}};
}

}  // namespace hgpd
