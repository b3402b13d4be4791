// Copyright 2026 The RoboBench Authors
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

namespace robobench
{

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input: bad manifests, schema violations,
/// out-of-range parameters. The CLI maps these to exit code 1.
class ValidationError : public Error
{
public:
  using Error::Error;
};

/// A file could not be decoded (truncated PNG, misaligned point cloud, ...).
class DecodeError : public ValidationError
{
public:
  using ValidationError::ValidationError;
};

/// Filesystem failures (missing file, unwritable directory).
class IoError : public Error
{
public:
  using Error::Error;
};

/// A metric has no defined value for the given input (e.g. mIoU with every
/// class absent). Distinct from 0 on purpose.
class UndefinedMetricError : public ValidationError
{
public:
  using ValidationError::ValidationError;
};

}  // namespace robobench
