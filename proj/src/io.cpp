#include "apds/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "apds/error.hpp"

namespace apds {

std::vector<uint64_t> parse_ints(std::string_view text) {
    std::vector<uint64_t> out;
    size_t i = 0;
    while (i < text.size()) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c) || c == ',') {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ',') ++j;
        const std::string_view tok = text.substr(i, j - i);
        uint64_t v = 0;
        const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || end != tok.data() + tok.size())
            throw InvalidInput("not a decimal value: '" + std::string(tok) + "'");
        if (v == 0) throw InvalidInput("values must be at least 1");
        out.push_back(v);
        i = j;
    }
    if (out.empty()) throw EmptyInput();
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InvalidInput("cannot write " + path);
}

std::vector<uint64_t> read_symbols(const std::string& path, InputFormat format) {
    std::string data = read_file(path);
    if (format == InputFormat::kInts) return parse_ints(data);
    if (!data.empty() && data.back() == '\n') {
        data.pop_back();
        if (!data.empty() && data.back() == '\r') data.pop_back();
    }
    if (data.empty()) throw EmptyInput();
    return std::vector<uint64_t>(data.begin(), data.end());
}

std::vector<uint64_t> parse_pattern(std::string_view text, InputFormat format) {
    if (format == InputFormat::kInts) return parse_ints(text);
    std::vector<uint64_t> out;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '\\') {
            out.push_back(static_cast<unsigned char>(text[i]));
            continue;
        }
        if (i + 1 < text.size() && text[i + 1] == '\\') {
            out.push_back('\\');
            ++i;
            continue;
        }
        size_t j = i + 1;
        uint64_t v = 0;
        while (j < text.size() && j < i + 4 && std::isdigit(static_cast<unsigned char>(text[j]))) v = v * 10 + (text[j++] - '0');
        if (j == i + 1 || v > 255) throw InvalidInput("bad escape in '" + std::string(text) + "'");
        out.push_back(v);
        i = j - 1;
    }
    if (out.empty()) throw EmptyInput();
    return out;
}

uint64_t parse_symbol(std::string_view text, InputFormat format) {
    const auto s = parse_pattern(text, format);
    if (s.size() != 1) throw InvalidInput("expected one symbol, got '" + std::string(text) + "'");
    return s[0];
}

}  // namespace apds
