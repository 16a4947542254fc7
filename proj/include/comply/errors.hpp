#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace comply {

using Int = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tuple length or atom arities disagree.
class ArityError : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// The greedy search hit its cap, or an instance forbids every image value.
class CandidateSearchExhausted : public Error {
 public:
  CandidateSearchExhausted(Int n, Int cap)
      : Error("candidate search exhausted for n=" + std::to_string(n) +
              " with cap=" + std::to_string(cap)),
        n_(n),
        cap_(cap) {}

  Int n() const noexcept { return n_; }
  Int cap() const noexcept { return cap_; }

 private:
  Int n_;
  Int cap_;
};

class OutOfTable : public Error {
 public:
  using Error::Error;
};

}  // namespace comply
