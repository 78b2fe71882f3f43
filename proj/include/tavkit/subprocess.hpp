#pragma once

#include <memory>
#include <string>

#include "tavkit/bytes.hpp"

namespace tavkit {

// Spawns a shell command and exposes its stdout as a byte stream. The exit
// status is checked when the reader is destroyed only in the sense that the
// pipe is closed; consumers that care should drain to EOF.
std::unique_ptr<io::ByteReader> open_command_output(const std::string& command);

// Runs a shell command to completion; returns its exit status.
int run_command(const std::string& command);

} // namespace tavkit
