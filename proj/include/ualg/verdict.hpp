#pragma once

#include <string>
#include <utility>

namespace ualg {

  //! The outcome of a check: whether it holds, and if not, why.
  struct Verdict {
    bool        holds = true;
    std::string detail;

    static Verdict pass(std::string detail = {}) {
      return {true, std::move(detail)};
    }
    static Verdict fail(std::string detail) {
      return {false, std::move(detail)};
    }

    explicit operator bool() const noexcept {
      return holds;
    }
  };

}  // namespace ualg
