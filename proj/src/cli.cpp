#include "des/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "des/errors.hpp"
#include "des/io.hpp"
#include "des/localization.hpp"
#include "des/oracle.hpp"
#include "des/synthesis.hpp"
#include "des/transfer_line.hpp"

namespace des {

namespace {

namespace fs = std::filesystem;

std::set<EventId> parse_id_list(const std::string& text) {
    std::set<EventId> ids;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
            ids.insert(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError("bad event id '" + tok + "'");
        }
    }
    return ids;
}

// "NAME=1,2,3"
std::pair<std::string, std::set<EventId>> parse_agent_arg(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw CLI::ValidationError("agent must be NAME=id,id,...: '" + text + "'");
    return {text.substr(0, eq), parse_id_list(text.substr(eq + 1))};
}

void write_named(Generator g, const fs::path& out, CommandResult& res) {
    g.name = out.stem().string();
    save_generator(g, out);
    res.output_files.push_back(out.string());
}

std::string describe(const Generator& g) {
    std::ostringstream os;
    os << g.name << ": " << g.state_count() << " states, " << g.transition_count()
       << " transitions, " << g.marked.size() << " marked";
    return os.str();
}

std::string trace_text(const std::optional<StringTrace>& t) {
    if (!t) return "";
    std::ostringstream os;
    os << "counterexample:";
    if (t->events.empty()) os << " (empty string)";
    for (EventId e : t->events) os << " " << e;
    os << "\n";
    return os.str();
}

std::vector<AgentSpec> build_agents(const std::vector<std::string>& agent_args,
                                    const Alphabet& global) {
    if (agent_args.empty()) throw CLI::ValidationError("at least one --agent required");
    std::vector<AgentSpec> agents;
    for (const std::string& a : agent_args) {
        auto [name, events] = parse_agent_arg(a);
        agents.push_back(make_agent(name, events, global));
    }
    return agents;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& argv) {
    CommandResult res;
    std::ostringstream out;

    CLI::App app{"Supervisory-control toolkit for discrete-event systems"};
    app.require_subcommand(1);

    std::string out_path, outdir;
    std::vector<std::string> inputs;
    std::vector<std::string> agent_args;
    std::string events_arg, keep_arg, observable_arg;
    int maxlen = 10;

    auto* c_sync = app.add_subcommand("sync", "Synchronous product");
    c_sync->add_option("out", out_path)->required();
    c_sync->add_option("inputs", inputs)->required()->expected(-1);

    auto* c_meet = app.add_subcommand("meet", "Product over shared events");
    c_meet->add_option("out", out_path)->required();
    c_meet->add_option("inputs", inputs)->required()->expected(2);

    auto* c_trim = app.add_subcommand("trim", "Reachable and coreachable part");
    c_trim->add_option("out", out_path)->required();
    c_trim->add_option("inputs", inputs)->required()->expected(1);

    auto* c_nonb = app.add_subcommand("nonblocking", "Nonblocking test");
    c_nonb->add_option("inputs", inputs)->required()->expected(1);

    auto* c_loop = app.add_subcommand("selfloop", "Add self-loops everywhere");
    c_loop->add_option("out", out_path)->required();
    c_loop->add_option("inputs", inputs)->required()->expected(1);
    c_loop->add_option("--events", events_arg, "comma-separated event ids")->required();

    auto* c_proj = app.add_subcommand("project", "Natural projection");
    c_proj->add_option("out", out_path)->required();
    c_proj->add_option("inputs", inputs)->required()->expected(1);
    c_proj->add_option("--keep", keep_arg, "comma-separated event ids to keep")->required();

    auto* c_supcon = app.add_subcommand("supcon", "Supremal controllable sublanguage");
    c_supcon->add_option("out", out_path)->required();
    c_supcon->add_option("inputs", inputs, "plant spec")->required()->expected(2);

    auto* c_condat = app.add_subcommand("condat", "Control data table");
    c_condat->add_option("inputs", inputs, "plant sup")->required()->expected(2);
    c_condat->add_option("--out", out_path);

    auto* c_reduce = app.add_subcommand("supreduce", "Supervisor reduction");
    c_reduce->add_option("out", out_path)->required();
    c_reduce->add_option("inputs", inputs, "plant sup")->required()->expected(2);

    auto* c_loc = app.add_subcommand("localize", "Per-agent local controllers");
    c_loc->add_option("outdir", outdir)->required();
    c_loc->add_option("inputs", inputs, "plant sup")->required()->expected(2);
    c_loc->add_option("--agent", agent_args, "NAME=id,id,...")->required();

    auto* c_checkeq = app.add_subcommand("checkeq", "Control equivalence of controllers");
    c_checkeq->add_option("inputs", inputs, "plant sup controller...")->required()->expected(-3);

    auto* c_norm = app.add_subcommand("checknormal", "Normality test");
    c_norm->add_option("inputs", inputs, "plant k")->required()->expected(2);
    c_norm->add_option("--observable", observable_arg, "comma-separated event ids")->required();

    auto* c_oracle = app.add_subcommand("oracle-eq", "Bounded-language equality");
    c_oracle->add_option("inputs", inputs)->required()->expected(2);
    c_oracle->add_option("--maxlen", maxlen);

    auto* c_evrep = app.add_subcommand("event-report", "Event-reduction report");
    c_evrep->add_option("inputs", inputs, "plant sup")->required()->expected(2);
    c_evrep->add_option("--agent", agent_args, "NAME=id,id,...")->required();
    c_evrep->add_option("--out", out_path);

    auto* c_fix = app.add_subcommand("fixture", "Write the transfer-line models");
    c_fix->add_option("outdir", outdir)->required();

    try {
        std::vector<std::string> args(argv.rbegin(), argv.rend());
        app.parse(args);

        if (app.got_subcommand(c_sync)) {
            std::vector<Generator> gens;
            for (const std::string& p : inputs) gens.push_back(load_generator(p));
            Generator g = sync(gens);
            write_named(std::move(g), out_path, res);
            out << describe(load_generator(out_path)) << "\n";
        } else if (app.got_subcommand(c_meet)) {
            Generator g = meet(load_generator(inputs[0]), load_generator(inputs[1]));
            write_named(std::move(g), out_path, res);
            out << describe(load_generator(out_path)) << "\n";
        } else if (app.got_subcommand(c_trim)) {
            write_named(trim(load_generator(inputs[0])), out_path, res);
            out << describe(load_generator(out_path)) << "\n";
        } else if (app.got_subcommand(c_nonb)) {
            bool ok = is_nonblocking(load_generator(inputs[0]));
            out << (ok ? "nonblocking" : "blocking") << "\n";
            res.exit_code = ok ? 0 : 1;
        } else if (app.got_subcommand(c_loop)) {
            Generator g = selfloop(load_generator(inputs[0]), parse_id_list(events_arg));
            write_named(std::move(g), out_path, res);
            out << describe(load_generator(out_path)) << "\n";
        } else if (app.got_subcommand(c_proj)) {
            Generator g = project(load_generator(inputs[0]), parse_id_list(keep_arg));
            write_named(std::move(g), out_path, res);
            out << describe(load_generator(out_path)) << "\n";
        } else if (app.got_subcommand(c_supcon)) {
            Generator g = supcon(load_generator(inputs[0]), load_generator(inputs[1]));
            write_named(std::move(g), out_path, res);
            out << describe(load_generator(out_path)) << "\n";
        } else if (app.got_subcommand(c_condat)) {
            Generator plant = load_generator(inputs[0]);
            Generator sup = load_generator(inputs[1]);
            std::string table = condat_table(control_data(plant, sup));
            out << table;
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                f << table;
                res.output_files.push_back(out_path);
            }
        } else if (app.got_subcommand(c_reduce)) {
            Generator g = supreduce(load_generator(inputs[0]), load_generator(inputs[1]));
            write_named(std::move(g), out_path, res);
            out << describe(load_generator(out_path)) << "\n";
        } else if (app.got_subcommand(c_loc)) {
            Generator plant = load_generator(inputs[0]);
            Generator sup = load_generator(inputs[1]);
            LocalControllerSet locs = localize_all(plant, sup, build_agents(agent_args, plant.alphabet));
            fs::create_directories(outdir);
            for (const LocalController& lc : locs.controllers) {
                fs::path full = fs::path(outdir) / (lc.agent.name + ".gen");
                fs::path stripped = fs::path(outdir) / (lc.agent.name + ".stripped.gen");
                save_generator(lc.generator, full);
                save_generator(lc.stripped, stripped);
                res.output_files.push_back(full.string());
                res.output_files.push_back(stripped.string());
                out << lc.agent.name << ": " << lc.generator.state_count() << " states, selflooped";
                if (lc.selflooped_everywhere.empty()) out << " -";
                for (EventId e : lc.selflooped_everywhere) out << " " << e;
                out << (lc.ecc_used ? "" : " (no ECC pair usable)") << "\n";
            }
        } else if (app.got_subcommand(c_checkeq)) {
            Generator plant = load_generator(inputs[0]);
            Generator sup = load_generator(inputs[1]);
            Generator joint = plant;
            for (std::size_t i = 2; i < inputs.size(); ++i)
                joint = meet(joint, lift(load_generator(inputs[i]), plant.alphabet));
            LangCompareResult cmp = lang_compare(joint, sup);
            out << "closed " << (cmp.closed_equal ? "ok" : "MISMATCH") << "\n";
            out << "marked " << (cmp.marked_equal ? "ok" : "MISMATCH") << "\n";
            out << trace_text(cmp.counterexample);
            res.exit_code = cmp.equal() ? 0 : 1;
        } else if (app.got_subcommand(c_norm)) {
            Generator plant = load_generator(inputs[0]);
            Generator k = load_generator(inputs[1]);
            bool normal = is_normal(plant, k, parse_id_list(observable_arg));
            out << (normal ? "normal" : "not normal") << "\n";
            res.exit_code = normal ? 0 : 1;
        } else if (app.got_subcommand(c_oracle)) {
            OracleResult r = oracle_equal(load_generator(inputs[0]), load_generator(inputs[1]),
                                          maxlen);
            out << (r.equal ? "equal" : "different") << " up to length " << maxlen << "\n";
            out << trace_text(r.witness);
            res.exit_code = r.equal ? 0 : 1;
        } else if (app.got_subcommand(c_evrep)) {
            Generator plant = load_generator(inputs[0]);
            Generator sup = load_generator(inputs[1]);
            LocalControllerSet locs = localize_all(plant, sup, build_agents(agent_args, plant.alphabet));
            Generator rsup = supreduce(plant, sup);
            std::string table = event_reduction_report(locs, rsup);
            out << table;
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                f << table;
                res.output_files.push_back(out_path);
            }
        } else if (app.got_subcommand(c_fix)) {
            fs::create_directories(outdir);
            for (const Generator& g : {transfer_line::m1(), transfer_line::m2(),
                                       transfer_line::tu(), transfer_line::b1(),
                                       transfer_line::b2()}) {
                fs::path p = fs::path(outdir) / (g.name + ".gen");
                save_generator(g, p);
                res.output_files.push_back(p.string());
                out << "wrote " << p.string() << "\n";
            }
        }
    } catch (const CLI::ParseError& e) {
        res.exit_code = 2;
        res.stdout_report = std::string(e.what()) + "\n";
        return res;
    } catch (const ResourceError& e) {
        res.exit_code = 4;
        res.stdout_report = std::string("error: ") + e.what() + "\n";
        return res;
    } catch (const InputError& e) {
        res.exit_code = 3;
        res.stdout_report = std::string("error: ") + e.what() + "\n";
        return res;
    }

    res.stdout_report = out.str();
    return res;
}

}  // namespace des
