#ifndef IVO_CHECK_HPP
#define IVO_CHECK_HPP

#include <map>
#include <string>
#include <vector>

namespace ivo {

// Sampling cannot prove a limit or a universally quantified statement, so
// probes distinguish "no counterexample found" (pass), "explicit witness
// above tolerance" (fail) and "hypotheses not met / boundary case only"
// (inconclusive).
enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "inconclusive";
    }
}

// A single offending sample, with enough payload to re-execute it.
struct Witness {
    std::string what;            // which assertion broke
    long sample_index = -1;      // index into the check's substream
    double residual = 0.0;       // violation magnitude
    std::vector<double> data;    // raw inputs (endpoints / coords), replay payload
};

struct CheckReport {
    std::string name;            // stable check identifier, e.g. "laws/metric_scale"
    std::string anchor;          // statement being verified, in formula form
    Verdict verdict = Verdict::Inconclusive;
    long samples = 0;
    double tolerance = 0.0;
    double max_residual = 0.0;
    std::vector<Witness> witnesses;
    std::map<std::string, double> stats;   // e.g. branch frequencies
    std::vector<std::string> notes;

    void fail_with(Witness w) {
        verdict = Verdict::Fail;
        if (w.residual > max_residual) max_residual = w.residual;
        if (witnesses.size() < 16) witnesses.push_back(std::move(w));
    }
    void observe_residual(double r) {
        if (r > max_residual) max_residual = r;
    }
};

}  // namespace ivo

#endif
