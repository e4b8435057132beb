// Copyright 2026 The simrefine Authors. All Rights Reserved.
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
// =============================================================================

#include "simrefine/error.hpp"

namespace simrefine {

int ExitCodeFor(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kBounds:
    case ErrorKind::kDomain:
    case ErrorKind::kShape:
      return 2;
    case ErrorKind::kIngestion:
      return 3;
    case ErrorKind::kNumerical:
      return 4;
    case ErrorKind::kIo:
      return 1;
  }
  return 1;
}

}  // namespace simrefine
