#ifndef SPECSEQ_ERRORS_HPP
#define SPECSEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace specseq {

/// Malformed input document. `location` is a path into the document
/// (e.g. "d1[2].matrix[0][1]") so tooling can point at the offending field.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string location, const std::string& what)
        : std::runtime_error(location.empty() ? what : location + ": " + what),
          location_(std::move(location)) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

/// A consistency check inside the engine failed. This always indicates a
/// kernel bug (or an injected fault), never bad user input.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void internal_check(bool ok, const char* what) {
    if (!ok)
        throw internal_error(what);
}

} // namespace specseq

#endif
