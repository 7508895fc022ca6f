#pragma once

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "test_support.hpp"

extern char** environ;

namespace testing {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs the CLI binary with args; stdout and stderr are captured through files in scratch.
inline RunResult run_cli(const std::vector<std::string>& args, const std::filesystem::path& scratch) {
    static int serial = 0;
    const auto out_path = scratch / ("stdout-" + std::to_string(serial) + ".txt");
    const auto err_path = scratch / ("stderr-" + std::to_string(serial++) + ".txt");
    std::filesystem::create_directories(scratch);

    std::vector<std::string> argv_store{NEWSGRAM_CLI};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    argv.push_back(nullptr);

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    pid_t pid = 0;
    RunResult r;
    if (posix_spawn(&pid, argv[0], &actions, nullptr, argv.data(), environ) == 0) {
        int status = 0;
        waitpid(pid, &status, 0);
        r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    }
    posix_spawn_file_actions_destroy(&actions);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

/// Sources TSV pointing at the shipped fixture feeds through file:// URLs.
inline std::filesystem::path write_fixture_sources(const std::filesystem::path& dir, bool with_broken = false) {
    const auto feeds = std::filesystem::canonical(kFixtures / "feeds");
    std::string tsv = "# id\tname\turl\tcountry\n";
    tsv += "spiegel\tDER SPIEGEL\tfile://" + (feeds / "spiegel.xml").string() + "\tDE\n";
    tsv += "heise\theise online\tfile://" + (feeds / "heise.atom").string() + "\tDE\n";
    tsv += "fr\tFrankfurter Rundschau\tfile://" + (feeds / "fr.rdf").string() + "\tDE\n";
    tsv += "tonline\tt-online\tfile://" + (feeds / "tonline.xml").string() + "\tDE\n";
    if (with_broken) tsv += "broken\tBroken\tfile://" + (feeds / "broken.xml").string() + "\tDE\n";
    const auto path = dir / "sources.tsv";
    spit(path, tsv);
    return path;
}

}  // namespace testing
