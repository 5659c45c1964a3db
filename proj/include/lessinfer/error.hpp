#pragma once

#include <stdexcept>
#include <string>

namespace lessinfer {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller passed an invalid value (dimension mismatch, out-of-range size,
// trajectory not a member of its set, ...).
class argument_error : public error {
public:
    using error::error;
};

// A config file or world file is malformed or inconsistent.
class config_error : public error {
public:
    using error::error;
};

// An object is not in the state an operation requires (e.g. features not
// computed yet).
class state_error : public error {
public:
    using error::error;
};

// An operation that needs a nonempty set got an empty one (e.g. no path
// exists within the length bound).
class empty_set_error : public error {
public:
    using error::error;
};

// The input admits no well-defined answer (e.g. bandwidth selection on a set
// whose feature vectors are all identical).
class degenerate_error : public error {
public:
    using error::error;
};

// A computation lost all numerical mass (posterior underflow and similar).
class numerical_error : public error {
public:
    using error::error;
};

// A configured resource bound was exceeded (enumeration cap and similar).
class resource_error : public error {
public:
    using error::error;
};

// Process exit code for an error, used by the CLI:
//   0 success, 2 configuration/usage, 3 numerical degeneracy, 4 resource
//   bound, 1 anything else.
inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const resource_error*>(&e)) return 4;
    if (dynamic_cast<const numerical_error*>(&e)) return 3;
    if (dynamic_cast<const degenerate_error*>(&e)) return 3;
    if (dynamic_cast<const config_error*>(&e)) return 2;
    if (dynamic_cast<const argument_error*>(&e)) return 2;
    if (dynamic_cast<const state_error*>(&e)) return 2;
    if (dynamic_cast<const empty_set_error*>(&e)) return 2;
    return 1;
}

}  // namespace lessinfer
