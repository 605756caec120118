// Copyright (c) 2026 xsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace xsim {

// Base class for all domain errors. The CLI maps these to exit code 1;
// anything else (bad usage, missing files) exits 2.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define XSIM_DEFINE_ERROR(Name)                                \
  class Name : public Error {                                  \
  public:                                                      \
    explicit Name(const std::string& msg) : Error(msg) {}      \
  }

XSIM_DEFINE_ERROR(UnknownProfile);
XSIM_DEFINE_ERROR(DuplicateName);
XSIM_DEFINE_ERROR(UnknownConstruct);
XSIM_DEFINE_ERROR(CoreExhausted);
XSIM_DEFINE_ERROR(ChanendExhausted);
XSIM_DEFINE_ERROR(TimerExhausted);
XSIM_DEFINE_ERROR(MemoryExhausted);
XSIM_DEFINE_ERROR(UnknownPort);
XSIM_DEFINE_ERROR(UnknownChannel);
XSIM_DEFINE_ERROR(TimestampInPast);
XSIM_DEFINE_ERROR(DeadlockDetected);
XSIM_DEFINE_ERROR(InsufficientEdges);
XSIM_DEFINE_ERROR(UnknownGlyph);
XSIM_DEFINE_ERROR(DomainError);
XSIM_DEFINE_ERROR(UnboundedLoop);
XSIM_DEFINE_ERROR(PathExplosion);
XSIM_DEFINE_ERROR(IncompleteTrace);

#undef XSIM_DEFINE_ERROR

// Carries source position when the program file itself is malformed.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + msg),
        line(line), column(column) {}
  explicit ParseError(const std::string& msg) : Error(msg), line(0), column(0) {}
  int line;
  int column;
};

}  // namespace xsim
