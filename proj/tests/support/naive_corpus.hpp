#pragma once

// Full-scan query oracle that reads snapshot day files directly, without the
// library's reader or index.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace testing::oracle {

struct NaiveDay {
    std::map<std::string, unsigned long long> unigrams;
    std::map<std::pair<std::string, std::string>, unsigned long long> bigrams;
    unsigned long long tokens = 0;
    unsigned long long bigram_total = 0;
};

struct NaivePoint {
    std::string date;
    unsigned long long abs = 0;
    double rel = 0;
    std::optional<double> smoothed;
};

struct NaiveHit {
    std::string form;
    std::string pattern;
    unsigned long long count = 0;
};

class NaiveCorpus {
public:
    // Days keyed by ISO date string; files named unigrams-D.tsv and bigrams-D.tsv.
    static NaiveCorpus load(const std::filesystem::path& days_dir) {
        NaiveCorpus c;
        for (const auto& e : std::filesystem::directory_iterator(days_dir)) {
            const auto name = e.path().filename().string();
            if (name.rfind("unigrams-", 0) != 0) continue;
            const auto date = name.substr(9, 10);
            auto& day = c.days_[date];
            std::ifstream in(e.path());
            std::string line;
            std::getline(in, line);
            while (std::getline(in, line)) {
                const auto tab = line.find('\t');
                const auto n = std::stoull(line.substr(tab + 1));
                day.unigrams[line.substr(0, tab)] = n;
                day.tokens += n;
            }
            std::ifstream bin(days_dir / ("bigrams-" + date + ".tsv"));
            std::getline(bin, line);
            while (std::getline(bin, line)) {
                const auto t1 = line.find('\t');
                const auto t2 = line.find('\t', t1 + 1);
                const auto n = std::stoull(line.substr(t2 + 1));
                day.bigrams[{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1)}] = n;
                day.bigram_total += n;
            }
        }
        return c;
    }

    const std::map<std::string, NaiveDay>& days() const { return days_; }

    // Every calendar day in [from, to]; `count` maps a day to (abs, denominator).
    template <class F>
    std::vector<NaivePoint> series(const std::string& from, const std::string& to, int window, F count) const {
        std::vector<NaivePoint> out;
        std::vector<double> rel;
        for (auto d = parse(from); d <= parse(to); d += std::chrono::days{1}) {
            NaivePoint p;
            p.date = format(d);
            auto it = days_.find(p.date);
            if (it != days_.end()) {
                const auto [abs, denom] = count(it->second);
                p.abs = abs;
                p.rel = denom ? static_cast<double>(abs) / static_cast<double>(denom) : 0.0;
            }
            rel.push_back(p.rel);
            out.push_back(p);
        }
        const auto sm = rolling_mean(rel, window);
        for (std::size_t i = 0; i < out.size(); ++i) out[i].smoothed = sm[i];
        return out;
    }

    std::vector<NaivePoint> exact(const std::string& p, const std::string& from, const std::string& to, int w) const {
        return series(from, to, w, [&](const NaiveDay& d) {
            auto it = d.unigrams.find(p);
            return std::pair{it == d.unigrams.end() ? 0ULL : it->second, d.tokens};
        });
    }

    std::vector<NaivePoint> within(const std::string& p, const std::string& from, const std::string& to, int w) const {
        return series(from, to, w, [&](const NaiveDay& d) {
            unsigned long long s = 0;
            for (const auto& [form, n] : d.unigrams)
                if (form.find(p) != std::string::npos) s += n;
            return std::pair{s, d.tokens};
        });
    }

    std::vector<NaivePoint> bigram(const std::string& p, const std::string& from, const std::string& to, int w) const {
        const auto space = p.find(' ');
        const std::pair key{p.substr(0, space), p.substr(space + 1)};
        return series(from, to, w, [&](const NaiveDay& d) {
            auto it = d.bigrams.find(key);
            return std::pair{it == d.bigrams.end() ? 0ULL : it->second, d.bigram_total};
        });
    }

    // Per-form totals over the range, count descending then form ascending.
    std::vector<NaiveHit> hits(const std::string& p, const std::string& from, const std::string& to) const {
        std::map<std::string, unsigned long long> totals;
        for (const auto& [date, d] : days_) {
            if (date < from || date > to) continue;
            for (const auto& [form, n] : d.unigrams)
                if (form.find(p) != std::string::npos) totals[form] += n;
        }
        std::vector<NaiveHit> out;
        for (const auto& [form, n] : totals) out.push_back({form, p, n});
        std::stable_sort(out.begin(), out.end(), [](const NaiveHit& a, const NaiveHit& b) { return a.count > b.count; });
        return out;
    }

    // mode: 0 anywhere, 1 first, 2 second.
    std::vector<std::tuple<std::string, std::string, unsigned long long>> bigrams(const std::string& p, int mode,
                                                                                   const std::string& from,
                                                                                   const std::string& to) const {
        std::map<std::string, std::tuple<std::string, std::string, unsigned long long>> totals;
        for (const auto& [date, d] : days_) {
            if (date < from || date > to) continue;
            for (const auto& [k, n] : d.bigrams) {
                const bool hit = mode == 0   ? k.first.find(p) != std::string::npos || k.second.find(p) != std::string::npos
                                 : mode == 1 ? k.first == p
                                             : k.second == p;
                if (!hit) continue;
                auto& t = totals[k.first + ' ' + k.second];
                t = {k.first, k.second, std::get<2>(t) + n};
            }
        }
        std::vector<std::tuple<std::string, std::string, unsigned long long>> out;
        for (const auto& [text, t] : totals) out.push_back(t);
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return std::get<2>(a) > std::get<2>(b); });
        return out;
    }

    static std::chrono::sys_days parse(const std::string& iso) {
        return std::chrono::year_month_day{std::chrono::year{std::stoi(iso.substr(0, 4))},
                                           std::chrono::month{static_cast<unsigned>(std::stoi(iso.substr(5, 2)))},
                                           std::chrono::day{static_cast<unsigned>(std::stoi(iso.substr(8, 2)))}};
    }

    static std::string format(std::chrono::sys_days d) {
        const std::chrono::year_month_day ymd{d};
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                      static_cast<unsigned>(ymd.day()));
        return buf;
    }

private:
    std::map<std::string, NaiveDay> days_;
};

}  // namespace testing::oracle
