// SPDX-License-Identifier: Apache-2.0
//
// tris - transmissive RIS link and array simulation library
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

// Internal text helpers shared by the file readers

#ifndef TRIS_TEXT_UTIL_HPP
#define TRIS_TEXT_UTIL_HPP

#include "tris/common.hpp"

#include <charconv>
#include <string>
#include <vector>

namespace tris::detail
{
    inline std::string trim(const std::string &s)
    {
        const char *ws = " \t\r\n";
        auto b = s.find_first_not_of(ws);
        if (b == std::string::npos)
            return {};
        auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    inline std::string strip_comment(const std::string &s)
    {
        auto p = s.find('#');
        return p == std::string::npos ? s : s.substr(0, p);
    }

    inline std::vector<std::string> split(const std::string &s, char sep)
    {
        std::vector<std::string> out;
        std::string::size_type start = 0;
        while (true)
        {
            auto p = s.find(sep, start);
            out.push_back(s.substr(start, p == std::string::npos ? std::string::npos : p - start));
            if (p == std::string::npos)
                break;
            start = p + 1;
        }
        return out;
    }

    inline double parse_double(const std::string &s, const std::string &what)
    {
        auto t = trim(s);
        try
        {
            std::size_t used = 0;
            double v = std::stod(t, &used);
            if (used == t.size() && std::isfinite(v))
                return v;
        }
        catch (const std::exception &)
        {
        }
        fail(ErrorCode::parse, what + ": '" + t + "' is not a finite number");
    }

    inline long long parse_int(const std::string &s, const std::string &what)
    {
        auto t = trim(s);
        long long v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
            fail(ErrorCode::parse, what + ": '" + t + "' is not an integer");
        return v;
    }
}

#endif
