#pragma once

#include <stdexcept>
#include <string>

namespace slitwave {

// Exit-code categories used by the CLI front end.
enum class ErrorKind {
    usage,    // bad config / arguments            -> exit 1
    physics,  // violated physical precondition     -> exit 2
    io,       // file system / format failures      -> exit 3
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const {
        switch (kind_) {
        case ErrorKind::usage: return 1;
        case ErrorKind::physics: return 2;
        case ErrorKind::io: return 3;
        }
        return 1;
    }

  private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error(ErrorKind::usage, m) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(ErrorKind::io, m) {}
};
struct IoError : Error {
    explicit IoError(const std::string& m) : Error(ErrorKind::io, m) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(ErrorKind::physics, m) {}
};
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& m) : Error(ErrorKind::physics, m) {}
};
struct ResourceError : Error {
    explicit ResourceError(const std::string& m) : Error(ErrorKind::physics, m) {}
};
struct ShapeError : Error {
    explicit ShapeError(const std::string& m) : Error(ErrorKind::physics, m) {}
};
struct FitError : Error {
    explicit FitError(const std::string& m) : Error(ErrorKind::physics, m) {}
};
struct DecompositionError : Error {
    explicit DecompositionError(const std::string& m) : Error(ErrorKind::physics, m) {}
};

}  // namespace slitwave
