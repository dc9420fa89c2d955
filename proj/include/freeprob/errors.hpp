// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace freeprob {

// Base class of all errors thrown by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument values or malformed domain objects.
class domain_error : public error {
public:
    using error::error;
};

// A combinatorial enumeration guard was exceeded.
class resource_error : public error {
public:
    using error::error;
};

// An evaluation point collides with an atom (or another pole).
class pole_error : public error {
public:
    using error::error;
};

// A series was evaluated outside its region of convergence.
class convergence_error : public error {
public:
    using error::error;
};

// An iterative solver failed to converge or to bracket a root.
class solver_error : public error {
public:
    using error::error;
};

// Deconvolution by a sequence with vanishing first moment.
class singular_error : public error {
public:
    using error::error;
};

// Malformed input text (file formats, CLI payloads).
class parse_error : public error {
public:
    using error::error;
};

} // namespace freeprob
