// SPDX-License-Identifier: Apache-2.0
//
// simris: RIS-assisted physical channel simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SIMRIS_ERRORS_HPP
#define SIMRIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace simris
{
    // Input outside the mathematical domain of a model (d < 1 m, coincident points, ...)
    class domain_error : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Invalid configuration; `field()` names the offending key
    class config_error : public std::invalid_argument
    {
    public:
        config_error(std::string field, const std::string &what)
            : std::invalid_argument(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    // Random geometry could not be generated within the retry cap
    class generation_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class dimension_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };
}

#endif
