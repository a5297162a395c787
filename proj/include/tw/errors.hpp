#ifndef TW_ERRORS_HPP
#define TW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tw {

// Input or construction errors: loops, digons, missing arcs, bad files.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive routine was asked to run beyond its configured cap.
struct size_limit_error : std::runtime_error {
    explicit size_limit_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A verified result failed its own re-check. Always a bug.
struct verification_error : std::logic_error {
    explicit verification_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace tw

#endif
