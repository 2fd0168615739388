#pragma once

#include <string>
#include <utility>

namespace wittperv {

// Outcome of a single check. A failure always carries the witness that broke it.
class Verdict {
 public:
  enum class Status { kPass, kFail, kSkipped };

  static Verdict Pass() { return Verdict(Status::kPass, ""); }
  static Verdict Fail(std::string witness) { return Verdict(Status::kFail, std::move(witness)); }
  static Verdict Skipped(std::string reason) { return Verdict(Status::kSkipped, std::move(reason)); }
  static Verdict FromBool(bool ok, std::string witness) {
    return ok ? Pass() : Fail(std::move(witness));
  }

  Status status() const { return status_; }
  const std::string& detail() const { return detail_; }
  bool passed() const { return status_ == Status::kPass; }
  bool failed() const { return status_ == Status::kFail; }
  // Pass or skipped.
  bool acceptable() const { return status_ != Status::kFail; }

  // "pass", "fail(<witness>)" or "skipped(<reason>)".
  std::string ToString() const {
    switch (status_) {
      case Status::kPass:
        return "pass";
      case Status::kFail:
        return "fail(" + detail_ + ")";
      case Status::kSkipped:
        return "skipped(" + detail_ + ")";
    }
    return "fail(unknown status)";
  }

 private:
  Verdict(Status status, std::string detail) : status_(status), detail_(std::move(detail)) {}

  Status status_;
  std::string detail_;
};

}  // namespace wittperv
