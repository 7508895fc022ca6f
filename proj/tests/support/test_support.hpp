#pragma once

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "newsgram/date.hpp"

namespace testing {

inline const std::filesystem::path kFixtures{NEWSGRAM_FIXTURE_DIR};

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag = "t") {
        static std::mt19937_64 salt{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() /
                ("newsgram-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(salt()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void spit(const std::filesystem::path& p, const std::string& content) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
}

inline newsgram::Date day(int y, unsigned m, unsigned d) {
    return newsgram::Date{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

inline newsgram::Date operator""_d(const char* text, std::size_t n) {
    const std::string s(text, n);
    return day(std::stoi(s.substr(0, 4)), static_cast<unsigned>(std::stoi(s.substr(5, 2))),
               static_cast<unsigned>(std::stoi(s.substr(8, 2))));
}

/// Relative comparison with an absolute floor for values near zero.
inline bool close_rel(double a, double b, double rel) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= rel * scale;
}

/// Small random word from a fixed alphabet, for generated corpora.
inline std::string random_word(std::mt19937_64& rng, std::size_t min_len = 2, std::size_t max_len = 6) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::string w;
    const auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        // Multi-byte letters are picked as units.
        static const std::vector<std::string> letters = {"a", "b", "c", "d", "e", "i", "m", "n",
                                                         "o", "r", "s", "t", "u", "ä", "ö", "ß"};
        w += letters[std::uniform_int_distribution<std::size_t>(0, letters.size() - 1)(rng)];
    }
    return w;
}

}  // namespace testing
