#pragma once

#include <stdexcept>
#include <string>

namespace newsgram {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define NEWSGRAM_ERROR(Name)                 \
    class Name : public Error {              \
    public:                                  \
        using Error::Error;                  \
    }

// feed-ingest
NEWSGRAM_ERROR(NetworkError);
NEWSGRAM_ERROR(FeedParseError);
NEWSGRAM_ERROR(TimestampParseError);
NEWSGRAM_ERROR(ConfigError);
NEWSGRAM_ERROR(CycleBusy);

// ngram-store
NEWSGRAM_ERROR(DateMismatch);
NEWSGRAM_ERROR(EmptyCorpus);
NEWSGRAM_ERROR(EmptyRange);
NEWSGRAM_ERROR(SnapshotError);

// diversity-metrics
NEWSGRAM_ERROR(EmptyDistribution);
NEWSGRAM_ERROR(EmptyDay);
NEWSGRAM_ERROR(StreamTooShort);
NEWSGRAM_ERROR(DegenerateFit);

// query-engine
NEWSGRAM_ERROR(InvalidQuery);
NEWSGRAM_ERROR(TooManyPatterns);

#undef NEWSGRAM_ERROR

}  // namespace newsgram
