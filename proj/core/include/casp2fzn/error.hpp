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
#ifndef CASP2FZN_ERROR_HPP
#define CASP2FZN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace casp2fzn {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed ASPIF input. line() is 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

/// Well-formed ASPIF using a statement kind we refuse to drop silently.
class UnsupportedStatement : public Error {
public:
    using Error::Error;
};

/// A head atom occurs in the positive body of its own rule.
class TautologyError : public Error {
public:
    using Error::Error;
};

/// Integer arithmetic would leave the 64-bit range of the constraint model.
class OverflowError : public Error {
public:
    using Error::Error;
};

class NotHcfError : public Error {
public:
    using Error::Error;
};

/// Theory statements that do not fit the supported theory grammar.
class TheoryError : public Error {
public:
    TheoryError(const std::string& statement, const std::string& reason)
        : Error(statement.empty() ? reason : statement + ": " + reason), statement_(statement) {}
    [[nodiscard]] const std::string& statement() const noexcept { return statement_; }

private:
    std::string statement_;
};

class PartialShiftViolation : public Error {
public:
    using Error::Error;
};

class UnboundedError : public Error {
public:
    using Error::Error;
};

class EmitError : public Error {
public:
    using Error::Error;
};

class SearchSpaceTooLarge : public Error {
public:
    using Error::Error;
};

/// Solver output that does not follow the FlatZinc solution stream conventions.
class DecodeError : public Error {
public:
    DecodeError(const std::string& line, const std::string& reason)
        : Error(reason + ": '" + line + "'"), line_(line) {}
    [[nodiscard]] const std::string& offendingLine() const noexcept { return line_; }

private:
    std::string line_;
};

} // namespace casp2fzn

#endif
