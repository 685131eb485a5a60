#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace splitsel {

/// Malformed or invalid user input (scenario files, overrides, counters).
/// `path()` names the offending field, e.g. "periods[2].sector_shares".
class InputError : public std::runtime_error
{
public:
    InputError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what)
      , path_(std::move(path))
    {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace splitsel
