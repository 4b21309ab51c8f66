#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mlrisk {

/// One violated invariant found by validate_assessment().
struct ValidationIssue {
    std::string id;       // offending factor/target/threshold id, empty for assessment-level issues
    std::string field;
    std::string message;

    bool operator==(const ValidationIssue&) const = default;
};

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

class EmptyTargetList : public Error {
public:
    EmptyTargetList() : Error("target list is empty") {}
};

class RawValueOutOfRange : public Error {
public:
    explicit RawValueOutOfRange(std::string id)
        : Error("raw value of target '" + id + "' is outside [1, 100]"), id_(std::move(id)) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class UnknownId : public Error {
public:
    explicit UnknownId(std::string id) : Error("unknown id '" + id + "'"), id_(std::move(id)) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class TailoredOutFactor : public Error {
public:
    explicit TailoredOutFactor(std::string id)
        : Error("evaluation factor '" + id + "' is tailored out"), id_(std::move(id)) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class UnknownScopeId : public Error {
public:
    explicit UnknownScopeId(std::string id)
        : Error("threshold scope references unknown id '" + id + "'"), id_(std::move(id)) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

/// Carries the full issue list; what() summarises the first few.
class IssueListError : public Error {
public:
    IssueListError(const std::string& prefix, std::vector<ValidationIssue> issues)
        : Error(summarise(prefix, issues)), issues_(std::move(issues)) {}
    const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

private:
    static std::string summarise(const std::string& prefix, const std::vector<ValidationIssue>& issues) {
        std::string text = prefix;
        const std::size_t shown = issues.size() < 5 ? issues.size() : 5;
        for (std::size_t i = 0; i < shown; ++i) {
            text += i == 0 ? ": " : "; ";
            if (!issues[i].id.empty()) text += issues[i].id + ": ";
            text += issues[i].message;
        }
        if (issues.size() > shown) text += "; ... (" + std::to_string(issues.size() - shown) + " more)";
        return text;
    }

    std::vector<ValidationIssue> issues_;
};

class InvalidAssessment : public IssueListError {
public:
    explicit InvalidAssessment(std::vector<ValidationIssue> issues)
        : IssueListError("invalid assessment", std::move(issues)) {}
};

class ValidationError : public IssueListError {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues)
        : IssueListError("validation failed", std::move(issues)) {}
};

class ScoreOutOfRange : public Error {
public:
    explicit ScoreOutOfRange(double score)
        : Error("implementation score " + std::to_string(score) + " is outside [0, 1]") {}
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t actual)
        : Error("score vector has " + std::to_string(actual) + " entries, expected " +
                std::to_string(expected)) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(std::uint64_t combinations)
        : Error("grid has " + std::to_string(combinations) + " combinations, above the configured budget"),
          combinations_(combinations) {}
    std::uint64_t combinations() const noexcept { return combinations_; }

private:
    std::uint64_t combinations_;
};

class InvalidConfig : public Error {
public:
    explicit InvalidConfig(const std::string& message) : Error("invalid configuration: " + message) {}
};

class SameAxis : public Error {
public:
    explicit SameAxis(const std::string& id) : Error("both surface axes are '" + id + "'") {}
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(std::size_t index)
        : Error("level index " + std::to_string(index) + " is out of range") {}
};

class UnknownCatalogId : public Error {
public:
    explicit UnknownCatalogId(std::string id)
        : Error("unknown catalog id '" + id + "'"), id_(std::move(id)) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class IoFailure : public Error {
public:
    explicit IoFailure(const std::string& message) : Error(message) {}
};

/// Malformed document. line() is 1-based, 0 when the problem is not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace mlrisk
