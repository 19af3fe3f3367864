// SPDX-License-Identifier: Apache-2.0
//
// mawi - simulation and optimization toolkit for movable-antenna wireless systems
// Copyright (C) 2026 the mawi authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file
// except in compliance with the License. You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the
// License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND,
// either express or implied. See the License for the specific language governing permissions
// and limitations under the License.

#pragma once

#include <stdexcept>

namespace mawi
{

// Invalid parameters, malformed configuration, unsupported requests. CLI exit code 2.
class config_error : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside its mathematical domain (angles, probabilities, ...).
class domain_error : public config_error
{
  public:
    using config_error::config_error;
};

// Container or matrix shape mismatch.
class dimension_error : public config_error
{
  public:
    using config_error::config_error;
};

// Ill-conditioned or inconsistent numerical problem. CLI exit code 3.
class numerical_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Constraints cannot be satisfied (packing, rank, budget). CLI exit code 3.
class feasibility_error : public numerical_error
{
  public:
    using numerical_error::numerical_error;
};

// File system or serialization failure. CLI exit code 4.
class io_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace mawi
