#pragma once

#include <stdexcept>
#include <string>

namespace contrakit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfiniteModule : Error {
  InfiniteModule() : Error("module is infinite") {}
};
struct OrderBoundExceeded : Error {
  using Error::Error;
};
struct IllDefinedMorphism : Error {
  using Error::Error;
};
struct NotPPrimary : Error {
  using Error::Error;
};
struct PrecisionExhausted : Error {
  using Error::Error;
};
struct PrecisionTooLow : Error {
  using Error::Error;
};
struct NotCauchy : Error {
  using Error::Error;
};
struct NonCommuting : Error {
  using Error::Error;
};
struct SplittingFailed : Error {
  using Error::Error;
};
struct UnknownCorpusEntry : Error {
  using Error::Error;
};
struct AtomRuleMissing : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string &msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct SchemaError : Error {
  std::string field;
  SchemaError(const std::string &msg, std::string path)
      : Error(msg + " (field " + path + ")"), field(std::move(path)) {}
};

} // namespace contrakit
