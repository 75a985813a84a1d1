#pragma once

#include <stdexcept>
#include <string>

namespace semcom {

/// Invalid argument outside a function's mathematical domain.
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// Parameter combination that the algorithm cannot handle (e.g. a Meijer-G
/// contour that cannot separate the two pole families).
class parameter_error : public domain_error {
public:
    explicit parameter_error(const std::string& what) : domain_error(what) {}
};

/// A numerical routine failed to converge. Carries diagnostics so callers
/// can log what was being computed.
class numeric_error : public std::runtime_error {
public:
    numeric_error(const std::string& what, const std::string& diagnostics)
        : std::runtime_error(what + " [" + diagnostics + "]"), diag_(diagnostics) {}
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}

    const std::string& diagnostics() const noexcept { return diag_; }

private:
    std::string diag_;
};

/// Mismatched grid dimensions or an out-of-bounds crop box.
class shape_error : public std::invalid_argument {
public:
    explicit shape_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed dataset or configuration input. Records where the problem is.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& file, long line, const std::string& field,
                const std::string& what)
        : std::runtime_error(file + (line >= 0 ? ":" + std::to_string(line) : "") +
                             (field.empty() ? "" : " (" + field + ")") + ": " + what),
          file_(file), line_(line), field_(field) {}

    const std::string& file() const noexcept { return file_; }
    long line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::string file_;
    long line_ = -1;
    std::string field_;
};

}  // namespace semcom
