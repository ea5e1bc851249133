// Copyright 2026 The hamfex Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace hamfex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad CSV cells, missing columns, violated preconditions.
/// The CLI maps this to exit code 2.
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// Feature cache could not be read or written. The CLI maps this to exit code 3.
class CacheError : public Error {
   public:
    using Error::Error;
};

}  // namespace hamfex
