#include "sbvecm/errors.hpp"

namespace sbvecm {

void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace sbvecm
