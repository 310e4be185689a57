#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "apds/error.hpp"

namespace apds {

// Append-only little-endian byte sink.
class Writer {
public:
    void u8(uint8_t v) { buf_.push_back(static_cast<char>(v)); }

    void u32(uint32_t v) {
        for (int k = 0; k < 4; ++k) u8(static_cast<uint8_t>(v >> (8 * k)));
    }

    void u64(uint64_t v) {
        for (int k = 0; k < 8; ++k) u8(static_cast<uint8_t>(v >> (8 * k)));
    }

    void f64(double v) {
        uint64_t raw;
        std::memcpy(&raw, &v, sizeof raw);
        u64(raw);
    }

    // count, then each word
    void words(std::span<const uint64_t> ws) {
        u64(ws.size());
        for (uint64_t w : ws) u64(w);
    }

    void bytes(std::string_view s) {
        u64(s.size());
        buf_.append(s);
    }

    const std::string& data() const { return buf_; }
    std::string take() { return std::move(buf_); }
    size_t size() const { return buf_.size(); }

private:
    std::string buf_;
};

// Bounds-checked little-endian reader; throws FormatError on truncation.
class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    uint8_t u8() {
        need(1);
        return static_cast<uint8_t>(data_[pos_++]);
    }

    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int k = 0; k < 4; ++k) v |= static_cast<uint32_t>(static_cast<uint8_t>(data_[pos_++])) << (8 * k);
        return v;
    }

    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= static_cast<uint64_t>(static_cast<uint8_t>(data_[pos_++])) << (8 * k);
        return v;
    }

    double f64() {
        const uint64_t raw = u64();
        double v;
        std::memcpy(&v, &raw, sizeof v);
        return v;
    }

    std::vector<uint64_t> words() {
        const uint64_t count = u64();
        if (count > remaining() / 8) throw FormatError("word array exceeds remaining input");
        std::vector<uint64_t> out(count);
        for (auto& w : out) w = u64();
        return out;
    }

    std::string bytes() {
        const uint64_t len = u64();
        need(len);
        std::string out(data_.substr(pos_, len));
        pos_ += len;
        return out;
    }

    size_t remaining() const { return data_.size() - pos_; }
    bool done() const { return pos_ == data_.size(); }

private:
    void need(uint64_t k) const {
        if (k > remaining()) throw FormatError("truncated input");
    }

    std::string_view data_;
    size_t pos_ = 0;
};

}  // namespace apds
