#include "nonnoether/errors.hpp"

#include <utility>

namespace nonnoether {

ValidationError::ValidationError(std::vector<GateFailure> failures)
    : Error([&] {
        std::string msg = "validation failed:";
        for (const auto& f : failures) {
          msg += " [" + f.gate + " residual=" + std::to_string(f.residual);
          if (!f.detail.empty()) msg += " " + f.detail;
          msg += "]";
        }
        return msg;
      }()),
      failures_(std::move(failures)) {}

}  // namespace nonnoether
