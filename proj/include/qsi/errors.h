// Copyright 2026 The QSI Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSI_ERRORS_H
#define QSI_ERRORS_H

#include <stdexcept>
#include <string>

namespace qsi {

/// A size limit (enumeration cap, dense-amplitude budget) would be exceeded.
/// Malformed arguments use std::invalid_argument instead.
class CapExceeded : public std::runtime_error {
  public:
    explicit CapExceeded(const std::string &what) : std::runtime_error(what) {}
};

/// An output file could not be opened or written.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace qsi

#endif  // QSI_ERRORS_H
