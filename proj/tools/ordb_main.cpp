#include "ordb/errors.hpp"
#include "ordb/job.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ordb::InputError("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_atomic(const std::string& path, const std::string& data) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ordb::InputError("cannot write " + tmp);
        out << data;
        out.flush();
        if (!out) throw ordb::InputError("failed writing " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orderability certificates for groups and G-sets"};
    app.require_subcommand(1);

    std::string input, task, mode, out, plot;
    int radius = -1;
    std::uint64_t max_ball = 0, seed = 0;

    auto* run = app.add_subcommand("run", "execute a job document and write its certificate");
    run->add_option("--input", input, "job document, JSON or TOML")->required();
    run->add_option("--task", task, "override the job task");
    run->add_option("--radius", radius, "override the window radius");
    run->add_option("--mode", mode, "override the order mode (right|bi)");
    run->add_option("--out", out, "certificate path; stdout when omitted");
    run->add_option("--plot", plot, "plot path, .csv or .svg");
    run->add_option("--max-ball", max_ball, "override the ball enumeration cap");
    run->add_option("--seed-enumeration", seed,
                    "deterministically shuffle the embed enumeration");

    std::string cert_path;
    auto* verify = app.add_subcommand("verify", "re-check a certificate file");
    verify->add_option("file", cert_path, "certificate to verify")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("run")) {
            auto job = ordb::parse_job(read_file(input));
            if (!task.empty()) job.task = task;
            if (radius >= 0) job.radius = radius;
            if (!mode.empty()) job.mode = ordb::order_mode_from_string(mode);
            if (max_ball != 0) job.max_ball = max_ball;
            if (seed != 0) job.enumeration_seed = seed;

            auto start = std::chrono::steady_clock::now();
            auto result = ordb::run_job(job);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            // timing never enters the certificate, so runs stay byte-identical
            std::cerr << "wall ms: " << ms << "\n";

            if (out.empty())
                std::cout << result.certificate;
            else
                write_atomic(out, result.certificate);
            if (!plot.empty()) {
                const std::string& data =
                    ends_with(plot, ".svg") ? result.plot_svg : result.plot_csv;
                if (data.empty()) throw ordb::InputError("task has nothing to plot");
                write_atomic(plot, data);
            }
            return result.exit_code;
        }

        auto res = ordb::verify_certificate(read_file(cert_path));
        if (res.ok) {
            std::cout << "ok\n";
            return 0;
        }
        std::cout << "invalid: " << res.check << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
