// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#pragma once

#include <stdexcept>
#include <string>

namespace namegauge {

// Base for every failure the library reports by exception. Each subclass
// names one contract violation; callers that only need a message can catch
// this type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NAMEGAUGE_DEFINE_ERROR(Name)  \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  };

NAMEGAUGE_DEFINE_ERROR(MalformedNotebook)
NAMEGAUGE_DEFINE_ERROR(BadPattern)
NAMEGAUGE_DEFINE_ERROR(EmptyIdentifier)
NAMEGAUGE_DEFINE_ERROR(InvalidIdentifier)
NAMEGAUGE_DEFINE_ERROR(MismatchedPattern)
NAMEGAUGE_DEFINE_ERROR(LexiconError)
NAMEGAUGE_DEFINE_ERROR(ConfigError)
NAMEGAUGE_DEFINE_ERROR(TransportError)
NAMEGAUGE_DEFINE_ERROR(EmptyInput)
NAMEGAUGE_DEFINE_ERROR(RaggedTable)
NAMEGAUGE_DEFINE_ERROR(StoreError)
NAMEGAUGE_DEFINE_ERROR(IncompatibleSchema)
NAMEGAUGE_DEFINE_ERROR(ForeignKeyViolation)
NAMEGAUGE_DEFINE_ERROR(MissingAnnotations)
NAMEGAUGE_DEFINE_ERROR(CsvError)

#undef NAMEGAUGE_DEFINE_ERROR

}  // namespace namegauge
