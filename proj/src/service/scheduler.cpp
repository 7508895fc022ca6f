#include "newsgram/service/scheduler.hpp"

#include <array>
#include <cctype>

#include <spdlog/spdlog.h>

namespace newsgram::service {

namespace {

constexpr std::array<std::string_view, 7> kDayNames = {"sun", "mon", "tue", "wed", "thu", "fri", "sat"};

void run_logged(const char* name, const Scheduler::Job& job) {
    try {
        job();
    } catch (const std::exception& e) {
        spdlog::error("{} job failed: {}", name, e.what());
    } catch (...) {
        spdlog::error("{} job failed", name);
    }
}

}  // namespace

Clock::time_point WeeklySchedule::next_after(Clock::time_point t) const {
    using namespace std::chrono;
    const auto today = floor<days>(t);
    for (int ahead = 0; ahead <= 7; ++ahead) {
        const sys_days day = today + days{ahead};
        if (weekday{day} != this->day) continue;
        const Clock::time_point slot = day + time_of_day;
        if (slot > t) return slot;
    }
    return today + days{7} + time_of_day;  // unreachable for a valid weekday
}

std::optional<WeeklySchedule> parse_weekly_schedule(std::string_view text) {
    const auto at = text.find('@');
    if (at == std::string_view::npos) return std::nullopt;
    std::string day_name;
    for (char c : text.substr(0, at)) day_name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const std::string_view clock = text.substr(at + 1);

    WeeklySchedule s;
    bool found = false;
    for (unsigned i = 0; i < kDayNames.size(); ++i) {
        if (day_name == kDayNames[i]) {
            s.day = std::chrono::weekday{i};
            found = true;
        }
    }
    if (!found || clock.size() != 5 || clock[2] != ':') return std::nullopt;
    auto digits = [&](std::size_t i) -> int {
        if (!std::isdigit(static_cast<unsigned char>(clock[i])) || !std::isdigit(static_cast<unsigned char>(clock[i + 1])))
            return -1;
        return (clock[i] - '0') * 10 + (clock[i + 1] - '0');
    };
    const int h = digits(0);
    const int m = digits(3);
    if (h < 0 || h > 23 || m < 0 || m > 59) return std::nullopt;
    s.time_of_day = std::chrono::hours{h} + std::chrono::minutes{m};
    return s;
}

Scheduler::Scheduler(SchedulerConfig config, Job harvest, Job rebuild)
    : config_(std::move(config)), harvest_(std::move(harvest)), rebuild_(std::move(rebuild)) {}

Scheduler::~Scheduler() { stop(); }

void Scheduler::start() {
    std::lock_guard lock(mutex_);
    if (thread_.joinable()) return;
    stopping_ = false;
    thread_ = std::thread([this] { loop(); });
}

void Scheduler::stop() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    wake_.notify_all();
    if (thread_.joinable()) thread_.join();
}

void Scheduler::loop() {
    auto now = Clock::now();
    auto next_harvest = config_.harvest_on_start ? now : now + config_.harvest_interval;
    std::optional<Clock::time_point> next_rebuild;
    if (config_.next_rebuild) next_rebuild = config_.next_rebuild(now);

    std::unique_lock lock(mutex_);
    while (!stopping_) {
        auto due = next_harvest;
        if (next_rebuild && *next_rebuild < due) due = *next_rebuild;
        if (wake_.wait_until(lock, due, [this] { return stopping_; })) break;

        lock.unlock();
        now = Clock::now();
        if (now >= next_harvest) {
            if (harvest_) run_logged("harvest", harvest_);
            next_harvest += config_.harvest_interval;
            if (next_harvest <= Clock::now()) next_harvest = Clock::now() + config_.harvest_interval;
        }
        if (next_rebuild && Clock::now() >= *next_rebuild) {
            if (rebuild_) run_logged("rebuild", rebuild_);
            next_rebuild = config_.next_rebuild(Clock::now());
        }
        lock.lock();
    }
}

}  // namespace newsgram::service
