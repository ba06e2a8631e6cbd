#include "des/io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "des/errors.hpp"

namespace des {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& tok, const std::string& what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw InputError("parse: bad " + what + " '" + tok + "'");
    }
}

}  // namespace

Generator parse_generator(const std::string& text) {
    std::istringstream is(text);
    std::string line;

    std::string name;
    int states = -1;
    std::optional<int> init;
    std::set<State> marked;
    std::set<EventId> events;
    std::optional<std::set<EventId>> controllable;
    std::vector<std::array<int, 3>> transitions;
    bool saw_gen = false, in_trans = false, saw_end = false;

    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '#') continue;
        std::vector<std::string> toks = tokenize(line);
        if (toks.empty()) continue;
        if (saw_end) throw InputError("parse: content after END");

        if (in_trans) {
            if (toks[0] == "END") {
                saw_end = true;
                continue;
            }
            if (toks.size() != 3) throw InputError("parse: transition line needs 'src event dst'");
            transitions.push_back({parse_int(toks[0], "state"), parse_int(toks[1], "event"),
                                   parse_int(toks[2], "state")});
            continue;
        }

        const std::string& kw = toks[0];
        if (kw == "GEN") {
            if (toks.size() != 2) throw InputError("parse: GEN needs a name");
            name = toks[1];
            saw_gen = true;
        } else if (kw == "STATES") {
            if (toks.size() != 2) throw InputError("parse: STATES needs a count");
            states = parse_int(toks[1], "state count");
            if (states < 0) throw InputError("parse: negative state count");
        } else if (kw == "INIT") {
            if (toks.size() != 2) throw InputError("parse: INIT needs a state");
            init = parse_int(toks[1], "state");
        } else if (kw == "MARKED") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                marked.insert(parse_int(toks[i], "state"));
        } else if (kw == "EVENTS") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                events.insert(parse_int(toks[i], "event"));
        } else if (kw == "CONTROLLABLE") {
            controllable.emplace();
            for (std::size_t i = 1; i < toks.size(); ++i)
                controllable->insert(parse_int(toks[i], "event"));
        } else if (kw == "TRANS") {
            in_trans = true;
        } else {
            throw InputError("parse: unknown keyword '" + kw + "'");
        }
    }

    if (!saw_gen) throw InputError("parse: missing GEN line");
    if (states < 0) throw InputError("parse: missing STATES line");
    if (in_trans && !saw_end) throw InputError("parse: missing END");

    for (EventId e : events)
        if (e < 0) throw InputError("parse: negative event id");

    Alphabet alpha;
    if (controllable) {
        alpha.events = events;
        for (EventId e : *controllable) {
            if (!events.count(e))
                throw InputError("parse: controllable event " + std::to_string(e) +
                                 " not in EVENTS");
            alpha.controllable.insert(e);
        }
    } else {
        alpha = Alphabet::with_default_controllability(events);
    }

    if (states == 0) {
        if (!marked.empty() || !transitions.empty())
            throw InputError("parse: empty generator cannot have marked states or transitions");
        return Generator::make_empty(name, alpha);
    }
    if (!init) throw InputError("parse: missing INIT line");
    if (*init < 0 || *init >= states) throw InputError("parse: INIT out of range");

    Generator g = Generator::make(name, states, alpha, *init);
    for (State m : marked) {
        if (m < 0 || m >= states) throw InputError("parse: MARKED state out of range");
        g.marked.insert(m);
    }
    for (const auto& [src, e, dst] : transitions) g.add_transition(src, e, dst);
    g.validate();
    return g;
}

std::string emit_generator(const Generator& g) {
    std::ostringstream os;
    os << "GEN " << (g.name.empty() ? "unnamed" : g.name) << "\n";
    os << "STATES " << g.state_count() << "\n";
    if (!g.empty()) os << "INIT " << g.initial << "\n";
    os << "MARKED";
    for (State m : g.marked) os << " " << m;
    os << "\nEVENTS";
    for (EventId e : g.alphabet.events) os << " " << e;
    os << "\nCONTROLLABLE";
    for (EventId e : g.alphabet.controllable) os << " " << e;
    os << "\nTRANS\n";
    for (State s = 0; s < g.state_count(); ++s)
        for (const auto& [e, t] : g.out(s)) os << s << " " << e << " " << t << "\n";
    os << "END\n";
    return os.str();
}

Generator load_generator(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    Generator g = parse_generator(ss.str());
    if (g.name == "unnamed" || g.name.empty()) g.name = path.stem().string();
    return g;
}

void save_generator(const Generator& g, const std::filesystem::path& path) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << emit_generator(g);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace des
