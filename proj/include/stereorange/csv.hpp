// csv.hpp - CSV serialization of swept curves and pipeline outputs.
// Numbers are printed with six significant digits, decimal point, no
// thousands separators; rows end with a line feed.
#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stereorange/misalignment.hpp"
#include "stereorange/pipeline.hpp"
#include "stereorange/ranging.hpp"

namespace stereorange {

// Fixed formatting for every number the toolkit prints: %.6g.
inline std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

inline void write_fig1_csv(std::ostream& os, const std::vector<ErrorSample>& samples) {
    os << "disparity_px,range_m\n";
    for (const ErrorSample& s : samples) {
        os << static_cast<long long>(s.abscissa) << ','
           << format_number(s.value.value()) << '\n';
    }
}

inline void write_fig2_csv(std::ostream& os, const std::vector<ErrorSample>& samples) {
    os << "misalign_deg,baseline_m,rel_error\n";
    for (const ErrorSample& s : samples) {
        os << format_number(s.abscissa) << ',' << format_number(s.group_key) << ',';
        if (s.value)
            os << format_number(*s.value);
        else
            os << "divergent";
        os << '\n';
    }
}

inline void write_fig3_csv(std::ostream& os, const std::vector<ErrorSample>& samples) {
    os << "range_m,target_width_m,rel_error\n";
    for (const ErrorSample& s : samples) {
        os << format_number(s.abscissa) << ',' << format_number(s.group_key) << ',';
        if (s.value)
            os << format_number(*s.value);
        else
            os << "unmeasurable";
        os << '\n';
    }
}

inline void write_estimates_csv(std::ostream& os,
                                const std::vector<FrameEstimate>& estimates) {
    os << "t_s,target_index,disparity_px,range_m,true_range_m\n";
    for (const FrameEstimate& e : estimates) {
        os << format_number(e.t_s) << ',' << e.target_index << ','
           << e.disparity_px << ',' << format_number(e.range_m) << ','
           << format_number(e.true_range_m) << '\n';
    }
}

inline void write_warnings_csv(std::ostream& os,
                               const std::vector<WarningEvent>& events) {
    os << "t_s,target_index,closing_speed_mps,ttc_s\n";
    for (const WarningEvent& w : events) {
        os << format_number(w.t_s) << ',' << w.target_index << ','
           << format_number(w.closing_speed_mps) << ','
           << format_number(w.ttc_s) << '\n';
    }
}

template <typename WriteFn>
inline void write_csv_file(const std::string& path, WriteFn&& write) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path);
    write(os);
    if (!os)
        throw std::runtime_error("write failed: " + path);
}

}  // namespace stereorange
