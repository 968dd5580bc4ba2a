#include "gridmotif/time.hpp"

#include "gridmotif/error.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <limits>

namespace gridmotif {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

int read_fixed(std::string_view text, std::size_t pos, std::size_t width)
{
    if (pos + width > text.size() || !all_digits(text.substr(pos, width))) {
        fail(ErrorCode::BadTimestamp, "cannot parse '" + std::string(text) + "'");
    }
    int value = 0;
    std::from_chars(text.data() + pos, text.data() + pos + width, value);
    return value;
}

[[noreturn]] void bad(std::string_view text)
{
    fail(ErrorCode::BadTimestamp, "cannot parse '" + std::string(text) + "'");
}

}  // namespace

Timestamp parse_timestamp(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }

    std::string_view digits = text;
    if (!digits.empty() && digits.front() == '-') {
        digits.remove_prefix(1);
    }
    if (all_digits(digits)) {
        Timestamp t = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), t);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            bad(text);
        }
        return t;
    }

    // YYYY-MM-DD[T ]HH:MM[:SS[.fff]][Z|±HH[:MM]]
    if (text.size() < 16 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
        text[13] != ':') {
        bad(text);
    }
    const int year = read_fixed(text, 0, 4);
    const int month = read_fixed(text, 5, 2);
    const int day = read_fixed(text, 8, 2);
    const int hour = read_fixed(text, 11, 2);
    const int minute = read_fixed(text, 14, 2);
    int second = 0;
    std::size_t pos = 16;
    if (pos < text.size() && text[pos] == ':') {
        second = read_fixed(text, pos + 1, 2);
        pos += 3;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            // Sub-second precision is truncated; meter data is sampled in whole seconds.
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            }
        }
    }

    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                                          std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok() || hour > 23 || minute > 59 || second > 60) {
        bad(text);
    }

    Seconds offset = 0;
    if (pos < text.size()) {
        const char sign = text[pos];
        if (sign == 'Z' && pos + 1 == text.size()) {
            offset = 0;
        } else if (sign == '+' || sign == '-') {
            const int oh = read_fixed(text, pos + 1, 2);
            int om = 0;
            std::size_t rest = pos + 3;
            if (rest < text.size()) {
                if (text[rest] == ':') {
                    ++rest;
                }
                om = read_fixed(text, rest, 2);
                rest += 2;
            }
            if (rest != text.size() || oh > 23 || om > 59) {
                bad(text);
            }
            offset = (sign == '+' ? 1 : -1) * (oh * 3600 + om * 60);
        } else {
            bad(text);
        }
    }

    const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
    return static_cast<Timestamp>(days) * 86400 + hour * 3600 + minute * 60 + second - offset;
}

std::string format_iso8601(Timestamp t)
{
    Timestamp days = t / 86400;
    Timestamp rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(rem / 3600), static_cast<int>((rem % 3600) / 60), static_cast<int>(rem % 60));
    return buf;
}

Seconds parse_duration(std::string_view text)
{
    if (text.empty()) {
        fail(ErrorCode::BadConfig, "empty duration");
    }
    if (all_digits(text)) {
        Seconds s = 0;
        std::from_chars(text.data(), text.data() + text.size(), s);
        return s;
    }
    Seconds total = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos == start || pos == text.size()) {
            fail(ErrorCode::BadConfig, "bad duration '" + std::string(text) + "'");
        }
        Seconds amount = 0;
        std::from_chars(text.data() + start, text.data() + pos, amount);
        Seconds unit = 0;
        switch (text[pos]) {
        case 's': unit = 1; break;
        case 'm': unit = 60; break;
        case 'h': unit = 3600; break;
        case 'd': unit = 86400; break;
        default: fail(ErrorCode::BadConfig, "bad duration unit in '" + std::string(text) + "'");
        }
        ++pos;
        if (amount > std::numeric_limits<Seconds>::max() / unit / 2) {
            fail(ErrorCode::BadConfig, "duration overflow in '" + std::string(text) + "'");
        }
        total += amount * unit;
    }
    return total;
}

std::string format_duration(Seconds s)
{
    if (s == 0) {
        return "0s";
    }
    std::string out;
    if (s < 0) {
        out = "-";
        s = -s;
    }
    const std::pair<Seconds, char> units[] = {{86400, 'd'}, {3600, 'h'}, {60, 'm'}, {1, 's'}};
    for (auto [size, suffix] : units) {
        if (s >= size) {
            out += std::to_string(s / size);
            out += suffix;
            s %= size;
        }
    }
    return out;
}

}  // namespace gridmotif
