#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace forge {

// Single error type for the whole library.  `kind` separates malformed
// input (parse) from well-formed input that violates a contract (domain);
// the CLI maps these to exit codes 1 and 2.  `context` carries structured
// key/value detail for machine-readable error output.
class Error : public std::runtime_error {
public:
    enum class Kind { parse, domain };

    using Context = std::vector<std::pair<std::string, std::string>>;

    Error(Kind kind, std::string code, const std::string& message, Context context = {})
        : std::runtime_error(message), kind_(kind), code_(std::move(code)),
          context_(std::move(context)) {}

    Kind kind() const { return kind_; }
    const std::string& code() const { return code_; }
    const Context& context() const { return context_; }

private:
    Kind kind_;
    std::string code_;
    Context context_;
};

inline Error parse_error(std::string code, const std::string& message,
                         Error::Context context = {}) {
    return Error(Error::Kind::parse, std::move(code), message, std::move(context));
}

inline Error domain_error(std::string code, const std::string& message,
                          Error::Context context = {}) {
    return Error(Error::Kind::domain, std::move(code), message, std::move(context));
}

}  // namespace forge
