#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ncps/weyl_algebra.hpp"

namespace ncps {

enum class CheckStatus { pass, fail, info };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::info: return "INFO";
  }
  return "?";
}

struct IdentityCheck {
  std::string id;
  CheckStatus status = CheckStatus::pass;
  std::string residual;  ///< residual (or witness) expression; empty when an equality holds
};

/// Outcome of one verification pipeline. INFO entries never fail a report.
struct IdentityReport {
  std::string name;
  std::vector<IdentityCheck> entries;

  bool passed() const {
    for (const auto& e : entries) {
      if (e.status == CheckStatus::fail) return false;
    }
    return true;
  }

  std::size_t count(CheckStatus s) const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.status == s ? 1 : 0;
    return n;
  }

  const IdentityCheck* find(const std::string& id) const {
    for (const auto& e : entries) {
      if (e.id == id) return &e;
    }
    return nullptr;
  }

  /// lhs == rhs must hold exactly.
  void expect_equal(std::string id, const OperatorExpr& lhs, const OperatorExpr& rhs) {
    const OperatorExpr residual = lhs - rhs;
    if (residual.is_zero()) {
      entries.push_back({std::move(id), CheckStatus::pass, ""});
    } else {
      entries.push_back({std::move(id), CheckStatus::fail, to_text(residual)});
    }
  }

  void expect_equal(std::string id, const Scalar& lhs, const Scalar& rhs) {
    const Scalar residual = lhs - rhs;
    if (residual.is_zero()) {
      entries.push_back({std::move(id), CheckStatus::pass, ""});
    } else {
      entries.push_back({std::move(id), CheckStatus::fail, residual.to_string()});
    }
  }

  /// The expression must be nonzero; it is recorded as the witness.
  void expect_nonzero(std::string id, const OperatorExpr& witness) {
    entries.push_back({std::move(id), witness.is_zero() ? CheckStatus::fail : CheckStatus::pass, to_text(witness)});
  }

  void note(std::string id, const OperatorExpr& residual) {
    entries.push_back({std::move(id), CheckStatus::info, to_text(residual)});
  }

  nlohmann::json to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : entries) {
      list.push_back({{"identity_id", e.id}, {"status", ncps::to_string(e.status)}, {"residual", e.residual}});
    }
    return {{"report", name}, {"passed", passed()}, {"entries", list}};
  }
};

}  // namespace ncps
