#include "tzband/report.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tzband {

namespace fs = std::filesystem;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("csv_number: conversion failed");
    return {buf, end};
}

void write_table_csv(std::ostream& os, const Table& t) {
    for (size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_field(t.columns[c]);
    os << "\r\n";
    for (const auto& row : t.rows) {
        for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_number(row[c]);
        os << "\r\n";
    }
}

std::string table_file(const ExperimentResult& r, const Table& t) {
    std::string stem = r.name + "_" + t.name;
    for (char& c : stem)
        if (c == '-') c = '_';
    return stem + ".csv";
}

namespace {

std::string py_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '\\' || c == '"') out += '\\';
        out += c;
    }
    return out + '"';
}

std::string slug(const std::string& s) {
    std::string out;
    for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return out;
}

}  // namespace

std::string plot_script(const Series& s, const std::string& csv_file) {
    std::ostringstream py;
    py << "import csv\n"
          "import math\n"
          "import os\n"
          "import sys\n\n"
          "import matplotlib\n"
          "matplotlib.use(\"Agg\")\n"
          "import matplotlib.pyplot as plt\n\n"
          "here = os.path.dirname(os.path.abspath(__file__))\n"
       << "CSV = os.path.join(here, " << py_string(csv_file) << ")\n"
       << "COLUMN = " << py_string(s.column) << "\n"
       << "BOUND = " << py_string(s.bound_column) << "\n"
       << "TITLE = " << py_string(s.label) << "\n\n"
       << "ks, ys, bs = [], [], []\n"
          "with open(CSV, newline=\"\") as fh:\n"
          "    for row in csv.DictReader(fh):\n"
          "        ks.append(float(row[\"k\"]))\n"
          "        ys.append(float(row[COLUMN]))\n"
          "        if BOUND:\n"
          "            bs.append(float(row[BOUND]))\n\n"
          "fig, ax = plt.subplots()\n"
          "ax.loglog(ks, [max(y, 1e-300) for y in ys], \"o-\", label=COLUMN)\n"
          "if BOUND:\n"
          "    ax.loglog(ks, bs, \"--\", label=BOUND)\n"
          "pts = [(math.log10(k), math.log10(y)) for k, y in zip(ks, ys) if y > 0]\n"
          "if len(pts) >= 2:\n"
          "    n = len(pts)\n"
          "    mx = sum(p[0] for p in pts) / n\n"
          "    my = sum(p[1] for p in pts) / n\n"
          "    sxx = sum((p[0] - mx) ** 2 for p in pts)\n"
          "    slope = sum((p[0] - mx) * (p[1] - my) for p in pts) / sxx if sxx else float(\"nan\")\n"
          "    ax.set_title(f\"{TITLE} (slope {slope:.2f})\")\n"
          "else:\n"
          "    ax.set_title(TITLE)\n"
          "ax.set_xlabel(\"k\")\n"
          "ax.legend()\n"
          "out = os.path.splitext(os.path.abspath(__file__))[0] + \".png\"\n"
          "fig.savefig(out, dpi=120)\n"
          "if \"--show\" in sys.argv:\n"
          "    plt.show()\n";
    return py.str();
}

std::string summary_text(const std::vector<ExperimentResult>& results) {
    std::ostringstream os;
    int pass = 0, fail = 0;
    std::vector<std::string> failures;
    for (const auto& r : results) {
        os << "experiment " << r.name << "\n";
        for (const auto& c : r.criteria) {
            os << "  " << (c.passed ? "PASS " : "FAIL ") << c.id << "  " << c.title << "  [" << c.detail << "]\n";
            (c.passed ? pass : fail)++;
            if (!c.passed) failures.push_back(c.id);
        }
        for (const auto& s : r.series)
            if (s.fit) os << "  series " << s.label << ": " << s.fit->verdict() << "\n";
        for (const auto& n : r.notes) os << "  note: " << n << "\n";
    }
    os << "criteria: " << pass << " passed, " << fail << " failed\n";
    for (const auto& f : failures) os << "FAILED " << f << "\n";
    return os.str();
}

int emit_report(const std::vector<ExperimentResult>& results, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("emit_report: cannot create " + out_dir + ": " + ec.message());
    auto write = [&](const std::string& name, const std::string& body) {
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        out << body;
        if (!out) throw std::runtime_error("emit_report: cannot write " + name);
    };
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.passed();
        for (const auto& t : r.tables) {
            std::ostringstream os;
            write_table_csv(os, t);
            write(table_file(r, t), os.str());
        }
        for (const auto& s : r.series) {
            const Table* t = nullptr;
            for (const auto& tt : r.tables)
                if (tt.name == s.table) t = &tt;
            if (!t) throw std::logic_error("emit_report: series refers to missing table " + s.table);
            write("plot_" + slug(r.name) + "_" + slug(s.column) + ".py", plot_script(s, table_file(r, *t)));
        }
    }
    write("summary.txt", summary_text(results));
    return ok ? 0 : 1;
}

}  // namespace tzband
