// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace chrslab {

// Bad arguments, shape mismatches, violated preconditions.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computation would exceed the configured memory ceiling.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures when emitting reports.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace chrslab
