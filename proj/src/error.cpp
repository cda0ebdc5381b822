#include "aoi/error.hpp"

namespace aoi {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Unmappable:
      return 3;
    case ErrorKind::EmptyTarget:
      return 4;
    case ErrorKind::Parse:
    case ErrorKind::Schema:
    case ErrorKind::State:
      return 2;
  }
  return 1;
}

}  // namespace aoi
