#include <map>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "newsgram/errors.hpp"
#include "newsgram/feed/archive.hpp"
#include "newsgram/ngram/corpus.hpp"
#include "newsgram/ngram/daily_table.hpp"
#include "newsgram/ngram/export.hpp"
#include "newsgram/ngram/snapshot_io.hpp"
#include "test_support.hpp"

using namespace newsgram;
using namespace newsgram::ngram;
using testing::operator""_d;
using Tokens = std::vector<std::string>;

namespace {

CorpusItem make_item(Date d, Tokens title, Tokens description = {}, std::string source = "s") {
    CorpusItem item;
    item.source_id = std::move(source);
    item.date = d;
    item.title.tokens = std::move(title);
    item.description.tokens = std::move(description);
    return item;
}

std::map<std::string, Count> unigram_map(const DailyTable& t) {
    std::map<std::string, Count> m;
    for (const auto& r : t.sorted_unigrams()) m[r.form] = r.count;
    return m;
}

std::map<std::pair<std::string, std::string>, Count> bigram_map(const DailyTable& t) {
    std::map<std::pair<std::string, std::string>, Count> m;
    for (const auto& r : t.sorted_bigrams()) m[{r.first, r.second}] = r.count;
    return m;
}

Tokens random_tokens(std::mt19937_64& rng, std::size_t vocab, std::size_t max_len) {
    Tokens t(std::uniform_int_distribution<std::size_t>(0, max_len)(rng));
    for (auto& w : t) w = "w" + std::to_string(std::uniform_int_distribution<std::size_t>(0, vocab - 1)(rng));
    return t;
}

Corpus random_corpus(std::uint64_t seed, Date start, int days, std::size_t vocab, int items_per_day) {
    std::mt19937_64 rng(seed);
    Corpus c;
    for (int d = 0; d < days; ++d)
        for (int i = 0; i < items_per_day; ++i)
            c.add_item(make_item(start + std::chrono::days{d}, random_tokens(rng, vocab, 8), random_tokens(rng, vocab, 12)));
    return c;
}

}  // namespace

TEST_CASE("add_item worked examples") {
    DailyTable t("2020-04-14"_d);
    t.add_item(make_item("2020-04-14"_d, {"a", "b"}, {"c"}));
    CHECK(unigram_map(t) == std::map<std::string, Count>{{"a", 1}, {"b", 1}, {"c", 1}});
    CHECK(bigram_map(t) == std::map<std::pair<std::string, std::string>, Count>{{{"a", "b"}, 1}});
    CHECK(t.token_total() == 3);
    CHECK(t.bigram_total() == 1);
    CHECK(t.type_count() == 3);
    CHECK(t.sequence_count() == 2);

    DailyTable e("2020-04-14"_d);
    e.add_item(make_item("2020-04-14"_d, {}, {}));
    CHECK(e.empty());
    CHECK(e.type_count() == 0);
    CHECK(e.bigram_total() == 0);
    CHECK(e.sequence_count() == 0);
    CHECK(e.token_stream().empty());

    DailyTable x("2020-04-14"_d);
    x.add_item(make_item("2020-04-14"_d, {"x", "x", "x"}));
    CHECK(unigram_map(x) == std::map<std::string, Count>{{"x", 3}});
    CHECK(x.bigram_count("x", "x") == 2);
    CHECK(x.bigram_total() == 2);
}

TEST_CASE("add_item rejects items of another day") {
    DailyTable t("2020-04-14"_d);
    CHECK_THROWS_AS(t.add_item(make_item("2020-04-15"_d, {"a"})), DateMismatch);
    CHECK(t.empty());
}

TEST_CASE("bigrams never span units or items; token stream keeps ingestion order") {
    DailyTable t("2020-04-14"_d);
    t.add_item(make_item("2020-04-14"_d, {"a", "b"}, {"c", "d"}));
    t.add_item(make_item("2020-04-14"_d, {"e"}, {"a", "b"}));
    CHECK(t.bigram_count("b", "c") == 0);
    CHECK(t.bigram_count("d", "e") == 0);
    CHECK(t.bigram_count("a", "b") == 2);
    CHECK(t.bigram_count("c", "d") == 1);
    CHECK(t.bigram_count("b", "a") == 0);
    CHECK(t.token_stream() == Tokens{"a", "b", "c", "d", "e", "a", "b"});
    CHECK(t.count("a") == 2);
    CHECK(t.count("zzz") == 0);
}

TEST_CASE("sorted rows: count descending, ties by byte order") {
    DailyTable t("2020-04-14"_d);
    t.add_item(make_item("2020-04-14"_d, {"der", "corona", "am", "der", "corona", "der", "corona", "am"}));
    t.add_item(make_item("2020-04-14"_d, {"der", "corona", "der", "corona"}));
    const auto rows = t.sorted_unigrams();
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == UnigramRow{"corona", 5});
    CHECK(rows[1] == UnigramRow{"der", 5});
    CHECK(rows[2] == UnigramRow{"am", 2});

    DailyTable u("2020-04-14"_d);
    u.add_item(make_item("2020-04-14"_d, {"zebra", "äpfel", "apfel", "Zebra"}));
    const auto urows = u.sorted_unigrams();
    CHECK(urows[0].form == "Zebra");
    CHECK(urows[1].form == "apfel");
    CHECK(urows[2].form == "zebra");
    CHECK(urows[3].form == "äpfel");
}

TEST_CASE("daily table invariants hold on random input") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        DailyTable t("2020-04-14"_d);
        std::map<std::string, Count> uni;
        std::map<std::pair<std::string, std::string>, Count> bi;
        Tokens stream;
        std::size_t sequences = 0;
        for (int i = 0; i < 20; ++i) {
            auto item = make_item("2020-04-14"_d, random_tokens(rng, 15, 6), random_tokens(rng, 15, 10));
            for (const auto* seq : {&item.title.tokens, &item.description.tokens}) {
                if (!seq->empty()) ++sequences;
                for (std::size_t k = 0; k < seq->size(); ++k) {
                    ++uni[(*seq)[k]];
                    stream.push_back((*seq)[k]);
                    if (k > 0) ++bi[{(*seq)[k - 1], (*seq)[k]}];
                }
            }
            t.add_item(item);
        }
        CHECK(unigram_map(t) == uni);
        CHECK(bigram_map(t) == bi);
        CHECK(t.token_stream() == stream);
        Count sum = 0;
        for (auto c : t.counts()) sum += c;
        CHECK(sum == t.token_total());
        CHECK(t.type_count() == uni.size());
        CHECK(t.bigram_total() == t.token_total() - sequences);
        CHECK(t.bigram_total() <= t.token_total());
        t.for_each_bigram([&](std::string_view a, std::string_view b, Count) {
            CHECK(uni.count(std::string(a)) == 1);
            CHECK(uni.count(std::string(b)) == 1);
        });
    }
}

TEST_CASE("restore validates persisted rows") {
    const auto d = "2020-04-14"_d;
    const std::vector<UnigramRow> uni{{"a", 2}, {"b", 1}};
    const std::vector<BigramRow> bi{{"a", "b", 1}};
    const Tokens stream{"a", "b", "a"};
    const auto t = DailyTable::restore(d, uni, bi, stream);
    CHECK(t.token_total() == 3);
    CHECK(t.bigram_count("a", "b") == 1);
    CHECK(t.token_stream() == stream);

    const std::vector<UnigramRow> dup{{"a", 2}, {"a", 1}};
    CHECK_THROWS_AS(DailyTable::restore(d, dup, {}, {}, false), SnapshotError);
    const std::vector<BigramRow> stray{{"a", "z", 1}};
    CHECK_THROWS_AS(DailyTable::restore(d, uni, stray, {}, false), SnapshotError);
    const Tokens wrong{"a", "b", "b"};
    CHECK_THROWS_AS(DailyTable::restore(d, uni, bi, wrong), SnapshotError);
    const Tokens short_stream{"a", "b"};
    CHECK_THROWS_AS(DailyTable::restore(d, uni, bi, short_stream), SnapshotError);
    const std::vector<UnigramRow> zero{{"a", 0}};
    CHECK_THROWS_AS(DailyTable::restore(d, zero, {}, {}, false), SnapshotError);
    // Without the sidecar the stream is not checked.
    CHECK(DailyTable::restore(d, uni, bi, {}, false).token_ids().empty());
}

TEST_CASE("corpus totals and restriction") {
    Corpus c;
    c.add_item(make_item("2020-04-15"_d, {"a", "b"}, {}, "x"));
    c.add_item(make_item("2020-04-14"_d, {"a"}, {"c"}, "y"));
    c.add_item(make_item("2020-04-16"_d, {}, {}, "y"));
    CHECK(c.tables().size() == 3);
    CHECK(c.first_date() == "2020-04-14"_d);
    CHECK(c.last_date() == "2020-04-16"_d);
    CHECK(c.token_total() == 4);
    CHECK(c.type_total() == 3);
    CHECK(c.source_ids() == std::set<std::string>{"x", "y"});
    const auto early = c.until("2020-04-14"_d);
    CHECK(early.tables().size() == 1);
    CHECK(early.token_total() == 2);
    CHECK(Corpus{}.first_date() == std::nullopt);
}

TEST_CASE("build_corpus normalizes archived markup and replays in order") {
    const std::vector<feed::ArchiveRecord> records{
        {"s", "2020-04-14"_d, "<b>Corona</b>-Krise: Was nun?", "Die Maske &amp; mehr.", "l1", "f"},
        {"s", "2020-04-14"_d, "Heise: 120 km/h", "", "l2", "f"},
        {"t", "2020-04-15"_d, "Neue Normalität", "Neue Normalität im Alltag", "l3", "f"},
    };
    const auto c = build_corpus(records, text::ExclusionList::defaults());
    REQUIRE(c.tables().size() == 2);
    const auto& d1 = c.tables().at("2020-04-14"_d);
    CHECK(d1.token_stream() == Tokens{"corona-krise", "was", "nun", "die", "maske", "mehr"});
    CHECK(d1.sequence_count() == 2);
    const auto& d2 = c.tables().at("2020-04-15"_d);
    CHECK(d2.bigram_count("neue", "normalität") == 2);
    CHECK(d2.bigram_count("normalität", "neue") == 0);

    // The second record leaves nothing, yet the day exists via the first.
    const std::vector<feed::ArchiveRecord> only_noise{{"s", "2020-04-20"_d, "Heise: 120 km/h", "", "", "f"}};
    const auto noise = build_corpus(only_noise, text::ExclusionList::defaults());
    CHECK(noise.tables().size() == 1);
    CHECK(noise.tables().begin()->second.empty());
}

TEST_CASE("monthly summary worked examples") {
    Corpus one;
    Tokens words;
    for (int i = 0; i < 100; ++i) words.push_back("w" + std::to_string(i % 40));
    one.add_item(make_item("2020-04-14"_d, words));
    const auto s1 = monthly_summary(one);
    REQUIRE(s1.rows.size() == 1);
    CHECK(s1.rows[0].month == "2020-04");
    CHECK(s1.rows[0].tokens == 100);
    CHECK(s1.rows[0].share == 1.0);
    CHECK(s1.rows[0].types == 40);

    Corpus two;
    two.add_item(make_item("2020-03-31"_d, Tokens(60, "x")));
    two.add_item(make_item("2020-04-01"_d, Tokens(40, "x")));
    const auto s2 = monthly_summary(two);
    REQUIRE(s2.rows.size() == 2);
    CHECK(s2.rows[0].share == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(s2.rows[1].share == doctest::Approx(0.4).epsilon(1e-12));

    CHECK_THROWS_AS(monthly_summary(Corpus{}), EmptyCorpus);
    Corpus hollow;
    hollow.add_item(make_item("2020-04-14"_d, {}));
    CHECK_THROWS_AS(monthly_summary(hollow), EmptyCorpus);
}

TEST_CASE("monthly type counts equal a set-union oracle") {
    const auto c = random_corpus(5, "2020-03-27"_d, 12, 60, 6);  // spans March and April
    std::map<std::string, std::set<std::string>> types;
    std::map<std::string, Count> tokens;
    Count grand = 0;
    for (const auto& [d, t] : c.tables()) {
        for (const auto& w : t.token_stream()) {
            types[format_month(d)].insert(w);
            ++tokens[format_month(d)];
            ++grand;
        }
    }
    const auto s = monthly_summary(c);
    REQUIRE(s.rows.size() == types.size());
    double share_sum = 0;
    for (const auto& r : s.rows) {
        CHECK(r.types == types[r.month].size());
        CHECK(r.tokens == tokens[r.month]);
        CHECK(r.share == doctest::Approx(static_cast<double>(tokens[r.month]) / static_cast<double>(grand)));
        share_sum += r.share;
    }
    CHECK(std::abs(share_sum - 1.0) <= 1e-9);
}

TEST_CASE("week numbering starts at the corpus start") {
    const auto start = "2020-01-01"_d;
    CHECK(week_index(start, start) == 1);
    CHECK(week_index(start, "2020-01-07"_d) == 1);
    CHECK(week_index(start, "2020-01-08"_d) == 2);
    CHECK(week_start(start, 2) == "2020-01-08"_d);
    for (int k = 1; k < 30; ++k) CHECK(week_index(start, week_start(start, k)) == k);
}

TEST_CASE("frequency list file format") {
    DailyTable t("2020-04-14"_d);
    t.add_item(make_item("2020-04-14"_d, {"der", "corona", "der", "corona", "am"}));
    Corpus c;
    c.insert(t);
    const auto daily = frequency_lists(c, Granularity::daily, NgramKind::unigram, "2020-04-14"_d);
    REQUIRE(daily.size() == 1);
    std::ostringstream out;
    write_frequency_list(out, daily[0]);
    CHECK(out.str() == "form\tcount\ncorona\t2\nder\t2\nam\t1\n");
    CHECK(frequency_list_filename(daily[0]) == "unigrams-2020-04-14.tsv");

    const auto bigrams = frequency_lists(c, Granularity::daily, NgramKind::bigram, "2020-04-14"_d);
    std::ostringstream bout;
    write_frequency_list(bout, bigrams[0]);
    CHECK(bout.str() == "form1\tform2\tcount\nder\tcorona\t2\ncorona\tam\t1\ncorona\tder\t1\n");
    CHECK(frequency_list_filename(bigrams[0]) == "bigrams-2020-04-14.tsv");

    Corpus hollow;
    hollow.add_item(make_item("2020-04-14"_d, {}));
    const auto empty = frequency_lists(hollow, Granularity::daily, NgramKind::unigram, "2020-04-14"_d);
    std::ostringstream eout;
    write_frequency_list(eout, empty.at(0));
    CHECK(eout.str() == "form\tcount\n");

    CHECK_THROWS_AS(frequency_lists(c, Granularity::daily, NgramKind::unigram, "2020-04-14"_d, "2020-05-01"_d),
                    EmptyRange);
}

TEST_CASE("weekly export equals the merge of its daily exports") {
    const auto start = "2020-01-01"_d;
    const auto c = random_corpus(11, start, 17, 40, 5);
    for (auto kind : {NgramKind::unigram, NgramKind::bigram}) {
        const auto weekly = frequency_lists(c, Granularity::weekly, kind, start);
        REQUIRE(weekly.size() == 3);
        for (const auto& w : weekly) {
            std::map<std::string, Count> merged;
            for (const auto& [d, t] : c.tables()) {
                if (week_index(start, d) != w.week) continue;
                if (kind == NgramKind::unigram)
                    for (const auto& r : t.sorted_unigrams()) merged[r.form] += r.count;
                else
                    for (const auto& r : t.sorted_bigrams()) merged[r.first + '\t' + r.second] += r.count;
            }
            std::map<std::string, Count> got;
            if (kind == NgramKind::unigram)
                for (const auto& r : w.unigrams) got[r.form] += r.count;
            else
                for (const auto& r : w.bigrams) got[r.first + '\t' + r.second] += r.count;
            CHECK(got == merged);
            CHECK(w.start == week_start(start, w.week));
            CHECK(frequency_list_filename(w).rfind("weekly-", 0) == 0);
        }
    }
    const auto w1 = frequency_lists(c, Granularity::weekly, NgramKind::unigram, start, "2020-01-09"_d, "2020-01-10"_d);
    REQUIRE(w1.size() == 1);
    CHECK(w1[0].week == 2);
}

TEST_CASE("snapshot files round-trip") {
    testing::TempDir dir("snap");
    const auto c = random_corpus(21, "2020-04-01"_d, 5, 30, 4);
    write_corpus(dir.path(), c);
    CHECK(list_days(dir.path()).size() == 5);
    const auto back = read_corpus(dir.path());
    REQUIRE(back.tables().size() == c.tables().size());
    for (const auto& [d, t] : c.tables()) {
        const auto& r = back.tables().at(d);
        CHECK(unigram_map(r) == unigram_map(t));
        CHECK(bigram_map(r) == bigram_map(t));
        CHECK(r.token_stream() == t.token_stream());
        CHECK(r.bigram_total() == t.bigram_total());
    }
    CHECK(back.source_ids() == c.source_ids());

    const auto light = read_corpus(dir.path(), false);
    CHECK(light.token_total() == c.token_total());
    CHECK(light.tables().begin()->second.token_ids().empty());

    testing::TempDir again("snap2");
    write_corpus(again.path(), back);
    for (const auto& entry : std::filesystem::directory_iterator(dir.path()))
        CHECK(testing::slurp(entry.path()) == testing::slurp(again.path() / entry.path().filename()));
}

TEST_CASE("corrupt snapshot files are SnapshotError") {
    testing::TempDir dir("bad");
    testing::spit(dir / "unigrams-2020-04-14.tsv", "form\tcount\na\tx\n");
    testing::spit(dir / "bigrams-2020-04-14.tsv", "form1\tform2\tcount\n");
    CHECK_THROWS_AS(read_day(dir.path(), "2020-04-14"_d, false), SnapshotError);
    testing::spit(dir / "unigrams-2020-04-14.tsv", "wrong header\n");
    CHECK_THROWS_AS(read_day(dir.path(), "2020-04-14"_d, false), SnapshotError);
    testing::spit(dir / "unigrams-2020-04-14.tsv", "form\tcount\na\t1\n");
    CHECK_NOTHROW(read_day(dir.path(), "2020-04-14"_d, false));
    CHECK_THROWS_AS(read_day(dir.path(), "2020-04-14"_d, true), SnapshotError);  // no sidecar
    CHECK_THROWS_AS(read_day(dir.path(), "2020-04-15"_d, false), SnapshotError);
    testing::spit(dir / "unigrams-notadate.tsv", "form\tcount\n");
    CHECK(list_days(dir.path()).size() == 1);
}

TEST_CASE("rebuilding from the archive reproduces byte-identical snapshot files") {
    std::mt19937_64 rng(3);
    std::vector<feed::ArchiveRecord> records;
    for (int i = 0; i < 200; ++i) {
        std::string title, desc;
        for (const auto& w : random_tokens(rng, 50, 8)) title += w + " ";
        for (const auto& w : random_tokens(rng, 50, 12)) desc += w + ", ";
        records.push_back({"s" + std::to_string(i % 3), "2020-04-01"_d + std::chrono::days{i % 6}, title, desc, "", "f"});
    }
    testing::TempDir a("det-a"), b("det-b");
    write_corpus(a.path(), build_corpus(records, text::ExclusionList::defaults()));
    write_corpus(b.path(), build_corpus(records, text::ExclusionList::defaults()));
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(a.path())) {
        ++files;
        CHECK(testing::slurp(entry.path()) == testing::slurp(b.path() / entry.path().filename()));
    }
    CHECK(files == 6 * 3 + 1);
}
