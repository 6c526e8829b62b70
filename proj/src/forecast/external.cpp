#include "tsbench/forecast/external.hpp"

#include "tsbench/io/format.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace tsbench {

namespace fs = std::filesystem;

ExternalForecaster::ExternalForecaster(std::string command, std::uint64_t seed)
    : command_(std::move(command)), seed_(seed) {}

void ExternalForecaster::fit(const Frame& train, const FitContext& context) {
    lookback_ = context.lookback;
    record_training_slice(train);
}

Frame ExternalForecaster::forecast(const Frame& history, std::size_t horizon) const {
    check_history(history, horizon);

    const std::uint64_t id = invocation_.fetch_add(1);
    std::ostringstream stem;
    stem << "tsbench-ext-" << ::getpid() << "-"
         << reinterpret_cast<std::uintptr_t>(this) << "-" << id;
    const fs::path request = fs::temp_directory_path() / (stem.str() + "-request.csv");
    const fs::path meta = request.string() + ".meta";
    const fs::path response = fs::temp_directory_path() / (stem.str() + "-response.csv");

    {
        std::ofstream out(request);
        if (!out) {
            throw Error(ErrorCode::IoError, "cannot write " + request.string());
        }
        for (std::size_t c = 0; c < history.cols; ++c) {
            out << (c ? "," : "") << "c" << c;
        }
        out << "\n";
        for (std::size_t r = 0; r < history.rows; ++r) {
            for (std::size_t c = 0; c < history.cols; ++c) {
                out << (c ? "," : "") << format_double(history.at(r, c));
            }
            out << "\n";
        }
    }
    {
        std::ofstream out(meta);
        out << "horizon: " << horizon << "\n";
        out << "lookback: " << lookback_ << "\n";
        out << "seed: " << seed_ << "\n";
    }

    const std::string invocation =
        command_ + " '" + request.string() + "' '" + response.string() + "'";
    const int status = std::system(invocation.c_str());

    auto cleanup = [&] {
        std::error_code ec;
        fs::remove(request, ec);
        fs::remove(meta, ec);
        fs::remove(response, ec);
    };

    if (status != 0) {
        cleanup();
        throw Error(ErrorCode::MethodFailure,
                    "external command exited with status " + std::to_string(status));
    }

    std::ifstream in(response);
    if (!in) {
        cleanup();
        throw Error(ErrorCode::MethodFailure, "external command wrote no response file");
    }
    Frame out(horizon, history.cols);
    std::string line;
    std::size_t row = 0;
    bool first_line = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first_line) {
            first_line = false;
            char* end = nullptr;
            std::strtod(cells[0].c_str(), &end);
            if (end == cells[0].c_str()) continue; // header row
        }
        if (cells.size() != history.cols || row >= horizon) {
            cleanup();
            throw Error(ErrorCode::ShapeMismatch,
                        "external response is not horizon x channels");
        }
        for (std::size_t c = 0; c < history.cols; ++c) {
            char* end = nullptr;
            out.at(row, c) = std::strtod(cells[c].c_str(), &end);
            if (end == cells[c].c_str()) {
                cleanup();
                throw Error(ErrorCode::ShapeMismatch, "non-numeric cell in response");
            }
        }
        ++row;
    }
    cleanup();
    if (row != horizon) {
        throw Error(ErrorCode::ShapeMismatch, "external response has too few rows");
    }
    check_output(out);
    return out;
}

} // namespace tsbench
