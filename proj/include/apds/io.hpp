#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "apds/container.hpp"

namespace apds {

// Whitespace-separated decimal values >= 1 (commas also separate). Throws
// InvalidInput on a malformed token, EmptyInput when there are none.
std::vector<uint64_t> parse_ints(std::string_view text);

// Reads a whole file; InvalidInput if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

// Symbols of an input file. In byte format one trailing newline ("\n" or
// "\r\n") is dropped and each remaining byte is a symbol (its value).
std::vector<uint64_t> read_symbols(const std::string& path, InputFormat format);

// Query arguments. Byte format: raw characters, with "\NNN" for a decimal
// byte value and "\\" for a backslash. Int format: decimal values.
std::vector<uint64_t> parse_pattern(std::string_view text, InputFormat format);
uint64_t parse_symbol(std::string_view text, InputFormat format);

}  // namespace apds
