#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace korbit
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (permutations, group/catalog/k-set/trace files).
class ParseError : public Error
{
public:
  using Error::Error;
};

/// An operation was called outside its domain (e.g. intransitive group
/// passed to block_systems, partition not invariant).
class PreconditionError : public Error
{
public:
  using Error::Error;
};

/// A configured combinatorial budget would be exceeded. Carries the name of
/// the cap and the CLI flag that raises it.
class ResourceLimitError : public Error
{
public:
  ResourceLimitError(std::string cap, std::string flag, std::size_t limit,
                     std::string const &what)
    : Error(what + " (" + cap + " = " + std::to_string(limit) +
            ", raise with " + flag + ")"),
      cap_(std::move(cap)), flag_(std::move(flag)), limit_(limit)
  {}

  std::string const &cap() const { return cap_; }
  std::string const &flag() const { return flag_; }
  std::size_t limit() const { return limit_; }

private:
  std::string cap_;
  std::string flag_;
  std::size_t limit_;
};

} // namespace korbit
