#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isogeo {

enum class ErrorKind {
  NotAdmissible,
  DomainError,
  LightlikePoint,
  LightlikeDirection,
  WrongSpace,
  StencilOutsideDomain,
  LeftDomain,
  StepNotPositive,
  DegenerateBranch,
  BadParam,
};

const char* to_string(ErrorKind kind) noexcept;

/// Raised by the geometry kernel when a point or argument violates an
/// operation's precondition.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax error in a surface expression; `offset` is the byte offset of the
/// offending token in the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : std::runtime_error("parse error at offset " + std::to_string(offset) +
                           ": " + message),
        offset_(offset),
        message_(message) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::LightlikePoint: return "LightlikePoint";
    case ErrorKind::LightlikeDirection: return "LightlikeDirection";
    case ErrorKind::WrongSpace: return "WrongSpace";
    case ErrorKind::StencilOutsideDomain: return "StencilOutsideDomain";
    case ErrorKind::LeftDomain: return "LeftDomain";
    case ErrorKind::StepNotPositive: return "StepNotPositive";
    case ErrorKind::DegenerateBranch: return "DegenerateBranch";
    case ErrorKind::BadParam: return "BadParam";
  }
  return "Unknown";
}

}  // namespace isogeo
