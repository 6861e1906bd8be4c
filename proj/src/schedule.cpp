#include "qwalk/schedule.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qwalk {

bool ScheduleOverride::matches(int step, int position) const {
    if (!all_steps && (step < step_lo || step > step_hi)) return false;
    if (all_positions) return true;
    return std::find(positions.begin(), positions.end(), position) != positions.end();
}

Schedule::Schedule(int steps, CoinSpec default_coin)
    : steps_(steps), default_coin_(default_coin) {
    if (steps_ <= 0) {
        throw std::invalid_argument("Schedule: steps must be positive, got " +
                                    std::to_string(steps_));
    }
}

void Schedule::add_override(ScheduleOverride ov) {
    if (!ov.all_steps) {
        if (ov.step_lo > ov.step_hi) {
            throw std::invalid_argument("Schedule: empty step range " +
                                        std::to_string(ov.step_lo) + ".." +
                                        std::to_string(ov.step_hi));
        }
        if (ov.step_lo < 1 || ov.step_hi > steps_) {
            throw std::invalid_argument("Schedule: override steps " +
                                        std::to_string(ov.step_lo) + ".." +
                                        std::to_string(ov.step_hi) +
                                        " outside [1, " + std::to_string(steps_) + "]");
        }
    }
    overrides_.push_back(std::move(ov));
}

const CoinSpec& Schedule::spec_at(int step, int position) const {
    if (step < 1 || step > steps_) {
        throw std::out_of_range("Schedule: step " + std::to_string(step) +
                                " outside [1, " + std::to_string(steps_) + "]");
    }
    for (auto it = overrides_.rbegin(); it != overrides_.rend(); ++it) {
        if (it->matches(step, position)) return it->coin;
    }
    return default_coin_;
}

CoinOperator Schedule::coin_at(int step, int position) const {
    return spec_at(step, position).matrix();
}

std::string Schedule::render() const {
    std::ostringstream os;
    os << "steps " << steps_ << "\n";
    os << "default coin " << default_coin_.to_dsl() << "\n";
    for (const auto& ov : overrides_) {
        os << "at ";
        if (ov.all_steps) {
            os << "*";
        } else if (ov.step_lo == ov.step_hi) {
            os << ov.step_lo;
        } else {
            os << ov.step_lo << ".." << ov.step_hi;
        }
        os << " pos ";
        if (ov.all_positions) {
            os << "*";
        } else {
            for (std::size_t i = 0; i < ov.positions.size(); ++i) {
                if (i) os << ",";
                os << ov.positions[i];
            }
        }
        os << " coin " << ov.coin.to_dsl() << "\n";
    }
    return os.str();
}

std::vector<std::string> Schedule::validate() const {
    std::vector<std::string> warnings;
    std::vector<CoinOperator> distinct{default_coin_.matrix()};
    for (const auto& ov : overrides_) {
        const CoinOperator m = ov.coin.matrix();
        bool known = false;
        for (const auto& d : distinct) {
            if (max_entry_difference(m, d) < 1e-12) {
                known = true;
                break;
            }
        }
        if (!known) distinct.push_back(m);
    }
    if (distinct.size() > 3) {
        warnings.push_back("schedule uses " + std::to_string(distinct.size()) +
                           " distinct coin operators; the three-level EOM switching "
                           "supports at most 3 per run");
    }
    return warnings;
}

Schedule Schedule::with_angle_perturbation(double delta_deg) const {
    Schedule out(steps_, default_coin_.perturbed_angle(delta_deg));
    for (auto ov : overrides_) {
        ov.coin = ov.coin.perturbed_angle(delta_deg);
        out.add_override(std::move(ov));
    }
    return out;
}

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
               line[j] != '#') {
            ++j;
        }
        tokens.push_back({line.substr(i, j - i), static_cast<int>(i + 1)});
        i = j;
    }
    return tokens;
}

int parse_int(const Token& tok, int line_no) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(tok.text, &used);
    } catch (const std::exception&) {
        throw ParseError(line_no, tok.column, "expected integer, got '" + tok.text + "'");
    }
    if (used != tok.text.size()) {
        throw ParseError(line_no, tok.column, "expected integer, got '" + tok.text + "'");
    }
    return value;
}

double parse_double(const Token& tok, int line_no) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(tok.text, &used);
    } catch (const std::exception&) {
        throw ParseError(line_no, tok.column, "expected number, got '" + tok.text + "'");
    }
    if (used != tok.text.size()) {
        throw ParseError(line_no, tok.column, "expected number, got '" + tok.text + "'");
    }
    return value;
}

// Consumes the COIN production starting at tokens[i].
CoinSpec parse_coin(const std::vector<Token>& tokens, std::size_t& i, int line_no) {
    if (i >= tokens.size()) {
        throw ParseError(line_no, static_cast<int>(tokens.back().column), "missing coin");
    }
    const Token& tok = tokens[i];
    const std::string& name = tok.text;
    ++i;
    if (name == "T") return CoinSpec::transmission();
    if (name == "R") return CoinSpec::reflection();
    if (name == "H") return CoinSpec::hadamard();
    if (name == "qwp+") return CoinSpec::qwp_plus();
    if (name == "qwp-") return CoinSpec::qwp_minus();
    if (name == "hwp" || name == "qwp") {
        if (i >= tokens.size()) {
            throw ParseError(line_no, tok.column, "'" + name + "' needs an angle in degrees");
        }
        const double angle = parse_double(tokens[i], line_no);
        ++i;
        return name == "hwp" ? CoinSpec::hwp_at(angle) : CoinSpec::qwp_at(angle);
    }
    if (name == "eom") {
        if (i >= tokens.size()) {
            throw ParseError(line_no, tok.column, "'eom' needs a phase in radians");
        }
        const double phi = parse_double(tokens[i], line_no);
        ++i;
        double global = 0.0;
        if (i < tokens.size()) {
            global = parse_double(tokens[i], line_no);
            ++i;
        }
        return CoinSpec::eom_at(phi, global);
    }
    throw ParseError(line_no, tok.column, "unknown coin name '" + name + "'");
}

}  // namespace

Schedule parse_schedule(const std::string& text) {
    std::optional<int> steps;
    std::optional<CoinSpec> default_coin;
    struct PendingOverride {
        ScheduleOverride ov;
        int line_no;
        int column;
    };
    std::vector<PendingOverride> pending;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& head = tokens[0].text;

        if (head == "steps") {
            if (tokens.size() != 2) {
                throw ParseError(line_no, tokens[0].column, "usage: steps INT");
            }
            const int n = parse_int(tokens[1], line_no);
            if (n <= 0) {
                throw ParseError(line_no, tokens[1].column,
                                 "step bound must be positive, got " + std::to_string(n));
            }
            steps = n;
        } else if (head == "default") {
            if (tokens.size() < 3 || tokens[1].text != "coin") {
                throw ParseError(line_no, tokens[0].column, "usage: default coin COIN");
            }
            std::size_t i = 2;
            default_coin = parse_coin(tokens, i, line_no);
            if (i != tokens.size()) {
                throw ParseError(line_no, tokens[i].column,
                                 "trailing tokens after coin: '" + tokens[i].text + "'");
            }
        } else if (head == "at") {
            if (tokens.size() < 2) {
                throw ParseError(line_no, tokens[0].column,
                                 "usage: at STEPSPEC pos POSSPEC coin COIN");
            }
            ScheduleOverride ov;
            const Token& stepspec = tokens[1];
            if (stepspec.text == "*") {
                ov.all_steps = true;
            } else if (auto dots = stepspec.text.find(".."); dots != std::string::npos) {
                const Token lo{stepspec.text.substr(0, dots), stepspec.column};
                const Token hi{stepspec.text.substr(dots + 2),
                               stepspec.column + static_cast<int>(dots) + 2};
                if (lo.text.empty() || hi.text.empty()) {
                    throw ParseError(line_no, stepspec.column,
                                     "malformed range '" + stepspec.text + "'");
                }
                ov.step_lo = parse_int(lo, line_no);
                ov.step_hi = parse_int(hi, line_no);
                if (ov.step_lo > ov.step_hi) {
                    throw ParseError(line_no, stepspec.column,
                                     "malformed range '" + stepspec.text +
                                         "' (lower bound exceeds upper)");
                }
            } else {
                ov.step_lo = ov.step_hi = parse_int(stepspec, line_no);
            }

            std::size_t i = 2;
            if (i >= tokens.size() || tokens[i].text != "pos") {
                throw ParseError(line_no, i < tokens.size() ? tokens[i].column : stepspec.column,
                                 "expected 'pos'");
            }
            ++i;
            // POSSPEC: "*" or comma-separated integers; spaces after commas allowed.
            std::string posspec;
            int pos_column = 0;
            while (i < tokens.size() && tokens[i].text != "coin") {
                if (posspec.empty()) pos_column = tokens[i].column;
                posspec += tokens[i].text;
                ++i;
            }
            if (posspec.empty()) {
                throw ParseError(line_no, stepspec.column, "missing position spec");
            }
            if (posspec == "*") {
                ov.all_positions = true;
            } else {
                std::size_t start = 0;
                while (start <= posspec.size()) {
                    const std::size_t comma = posspec.find(',', start);
                    const std::string item = posspec.substr(
                        start, comma == std::string::npos ? std::string::npos : comma - start);
                    ov.positions.push_back(
                        parse_int(Token{item, pos_column + static_cast<int>(start)}, line_no));
                    if (comma == std::string::npos) break;
                    start = comma + 1;
                }
            }

            if (i >= tokens.size() || tokens[i].text != "coin") {
                throw ParseError(line_no, stepspec.column, "expected 'coin'");
            }
            ++i;
            ov.coin = parse_coin(tokens, i, line_no);
            if (i != tokens.size()) {
                throw ParseError(line_no, tokens[i].column,
                                 "trailing tokens after coin: '" + tokens[i].text + "'");
            }
            pending.push_back({std::move(ov), line_no, stepspec.column});
        } else {
            throw ParseError(line_no, tokens[0].column,
                             "unknown directive '" + head + "'");
        }
    }

    if (!steps) throw ParseError(line_no, 1, "missing 'steps' directive");
    if (!default_coin) throw ParseError(line_no, 1, "missing 'default coin' directive");

    Schedule schedule(*steps, *default_coin);
    for (auto& p : pending) {
        try {
            schedule.add_override(std::move(p.ov));
        } catch (const std::invalid_argument& e) {
            throw ParseError(p.line_no, p.column, e.what());
        }
    }
    return schedule;
}

Schedule finite_graph_schedule(int half_width, CoinSpec interior, int steps) {
    if (half_width < 1) {
        throw std::invalid_argument("finite_graph_schedule: half_width must be >= 1");
    }
    Schedule schedule(steps, interior);
    ScheduleOverride boundary;
    boundary.all_steps = true;
    boundary.positions = {-half_width, half_width};
    boundary.coin = CoinSpec::reflection();
    schedule.add_override(std::move(boundary));
    return schedule;
}

}  // namespace qwalk
