/*
 *  Copyright (C) 2026  The casp2fzn authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */
#ifndef CASP2FZN_TOOLS_SUBPROCESS_HPP
#define CASP2FZN_TOOLS_SUBPROCESS_HPP

#include <casp2fzn/error.hpp>

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace casp2fzn::tools {

/// The executable could not be started.
class ProcessError : public Error {
public:
    using Error::Error;
};

struct ProcessResult {
    int exitCode = 0;
    /// Terminated by a signal; exitCode holds the signal number.
    bool signaled = false;
    std::string err;
};

/// Runs argv (looked up in PATH when argv[0] has no slash), hands every stdout line
/// to onLine as it arrives and collects stderr. Throws ProcessError.
ProcessResult runProcess(const std::vector<std::string>& argv, const std::function<void(std::string_view)>& onLine);

} // namespace casp2fzn::tools

#endif
