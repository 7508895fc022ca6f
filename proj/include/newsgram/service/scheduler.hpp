#pragma once

#include <chrono>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>

namespace newsgram::service {

using Clock = std::chrono::system_clock;

/// A fixed weekday and UTC time of day.
struct WeeklySchedule {
    std::chrono::weekday day = std::chrono::Monday;
    std::chrono::minutes time_of_day{std::chrono::hours{3}};

    /// First occurrence strictly after t.
    Clock::time_point next_after(Clock::time_point t) const;
};

/// Parses "mon@03:00"-style specs (weekday abbreviation, '@', HH:MM UTC).
std::optional<WeeklySchedule> parse_weekly_schedule(std::string_view text);

struct SchedulerConfig {
    std::chrono::milliseconds harvest_interval{std::chrono::hours{3}};
    bool harvest_on_start = true;
    std::function<Clock::time_point(Clock::time_point)> next_rebuild;
};

/// Runs the harvest job on a fixed interval and the rebuild job on its
/// schedule, both on one background thread, so they never overlap. A job
/// that throws is logged and simply runs again at its next slot.
class Scheduler {
public:
    using Job = std::function<void()>;

    Scheduler(SchedulerConfig config, Job harvest, Job rebuild);
    ~Scheduler();
    Scheduler(const Scheduler&) = delete;
    Scheduler& operator=(const Scheduler&) = delete;

    void start();
    void stop();

private:
    void loop();

    SchedulerConfig config_;
    Job harvest_;
    Job rebuild_;
    std::mutex mutex_;
    std::condition_variable wake_;
    bool stopping_ = false;
    std::thread thread_;
};

}  // namespace newsgram::service
