#include "qpw/cli.hpp"

#include "qpw/catalog.hpp"
#include "qpw/errors.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace qpw {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedJson : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const json& need(const json& req, const char* key) {
    if (!req.is_object() || !req.contains(key)) fail("InvalidInput", std::string("request needs \"") + key + "\"");
    return req.at(key);
}

int get_int(const json& req, const char* key, std::optional<int> fallback = std::nullopt) {
    if (!req.is_object() || !req.contains(key)) {
        if (fallback) return *fallback;
        fail("InvalidInput", std::string("request needs integer \"") + key + "\"");
    }
    const json& v = req.at(key);
    if (!v.is_number_integer()) fail("InvalidInput", std::string("\"") + key + "\" must be an integer");
    return v.get<int>();
}

std::string get_string(const json& req, const char* key) {
    const json& v = need(req, key);
    if (!v.is_string()) fail("InvalidInput", std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
}

bool is_surface_preset(const std::string& name) {
    for (const std::string& p : preset_names())
        if (p == name) return true;
    return false;
}

int trust_of(const json& req) { return get_int(req, "trust", kDefaultTrust); }

Quiver resolve_quiver(const json& v) {
    if (v.is_string()) return preset_quiver(v.get<std::string>());
    return quiver_from_json(v);
}

QP resolve_qp(const json& v, int trust) {
    if (!v.is_string()) return qp_from_json(v, trust);
    std::string name = v.get<std::string>();
    if (is_surface_preset(name)) return triangulation_potential(preset(name));
    CatalogEntry e = catalog(name);
    if (e.potentials.empty()) fail("UnknownEntry", name + " has no potential");
    if (e.potentials.size() > 1 && name.find('.') == std::string::npos)
        fail("UnknownEntry", name + " has several potentials; name one as " + name + "." + e.potentials.begin()->first);
    NCElement s = e.potentials.begin()->second;
    s.truncate(trust);
    return make_qp(e.quiver, s);
}

Triangulation resolve_triangulation(const json& v) {
    if (v.is_string()) return preset(v.get<std::string>());
    return triangulation_from_json(v);
}

Representation resolve_rep(const Quiver& q, const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() != "t2_witness") fail("UnknownEntry", "unknown representation " + v.get<std::string>());
        return t2_witness();
    }
    return rep_from_json(q, v);
}

QP qp_of(const json& req) { return resolve_qp(need(req, "qp"), trust_of(req)); }

json error_json(const std::string& name, const std::string& detail) { return {{"error", name}, {"detail", detail}}; }

} // namespace

Quiver preset_quiver(const std::string& name) {
    if (is_surface_preset(name)) return adjacency_quiver(preset(name));
    auto number = [&](size_t from) {
        std::string digits = name.substr(from);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return -1;
        return std::stoi(digits);
    };
    if (name.size() >= 2 && name[0] == '~' && number(2) > 0) return affine_quiver(name[1], number(2));
    if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D' || name[0] == 'E') && number(1) > 0)
        return dynkin_quiver(name[0], number(1));
    if (name.size() >= 2 && name[0] == 'K' && number(1) > 0) return kronecker_quiver(number(1));
    return catalog(name).quiver;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json op_quiver_mutate(const json& req) {
    Quiver q = resolve_quiver(need(req, "quiver"));
    std::vector<int> seq;
    if (req.contains("seq")) {
        const json& s = req.at("seq");
        if (!s.is_array()) fail("InvalidInput", "\"seq\" must be an array of vertices");
        for (const json& k : s) {
            if (!k.is_number_integer()) fail("InvalidInput", "\"seq\" entries must be integers");
            seq.push_back(k.get<int>());
        }
    } else {
        seq.push_back(get_int(req, "k"));
    }
    for (int k : seq) {
        if (k < 1 || k > q.n()) fail("InvalidVertex", "vertex " + std::to_string(k) + " is not in 1.." + std::to_string(q.n()));
        q = mutate(q, k);
    }
    return {{"seq", seq}, {"quiver", encode(q)}, {"b_matrix", to_b_matrix(q)}, {"canonical_key", canonical_key(q).key}};
}

json op_qp_mutate(const json& req) {
    QP qp = qp_of(req);
    int k = get_int(req, "k");
    if (k < 1 || k > qp.quiver.n()) fail("InvalidVertex", "vertex " + std::to_string(k) + " is not a vertex");
    json out = {{"k", k}};
    out.update(encode(qp_mutate(qp, k)));
    return out;
}

json op_reduce(const json& req) { return encode(reduce(qp_of(req))); }

json op_nondeg(const json& req) { return encode(nondeg_probe(qp_of(req), get_int(req, "depth", 3))); }

json op_classify(const json& req) {
    return encode(classify(resolve_quiver(need(req, "quiver")), get_int(req, "cap", kDefaultClassCap)));
}

json op_mutation_class(const json& req) {
    bool keys = req.contains("keys") && req.at("keys").is_boolean() && req.at("keys").get<bool>();
    return encode(mutation_class(resolve_quiver(need(req, "quiver")), get_int(req, "cap", kDefaultClassCap)), keys);
}

json op_jacobian_dim(const json& req) { return encode(truncated_dimension(qp_of(req), get_int(req, "p", 8))); }

json op_corner_test(const json& req) {
    QP qp = qp_of(req);
    int vertex = get_int(req, "vertex");
    int d = get_int(req, "d", 3);
    int p = get_int(req, "p", d + 1);
    return {{"vertex", vertex}, {"d", d}, {"p", p}, {"vanishes", corner_test(qp, vertex, d, p)}};
}

json op_surface_rank(const json& req) {
    MarkedSurface s;
    if (req.contains("triangulation"))
        s = analyze(resolve_triangulation(req.at("triangulation"))).computed;
    else
        s = surface_from_json(need(req, "surface"));
    validate_surface(s);
    return {{"surface", encode(s)}, {"rank", rank(s)}};
}

json op_surface_quiver(const json& req) {
    Triangulation tau = resolve_triangulation(need(req, "triangulation"));
    return {{"quiver", encode(adjacency_quiver(tau))}, {"b_matrix", adjacency_matrix(tau)}};
}

json op_surface_flip(const json& req) {
    Triangulation tau = resolve_triangulation(need(req, "triangulation"));
    std::string arc = get_string(req, "arc");
    BMatrix before = adjacency_matrix(tau);
    Triangulation sigma = flip(tau, arc);
    BMatrix after = adjacency_matrix(sigma);
    int k = 0;
    for (size_t i = 0; i < tau.arcs.size(); ++i)
        if (tau.arcs[i] == arc) k = static_cast<int>(i) + 1;
    json diff = json::array();
    for (size_t i = 0; i < before.size(); ++i)
        for (size_t j = i + 1; j < before.size(); ++j)
            if (before[i][j] != after[i][j])
                diff.push_back({{"i", i + 1}, {"j", j + 1}, {"before", before[i][j]}, {"after", after[i][j]}});
    return {{"arc", arc},
            {"vertex", k},
            {"triangulation", encode(sigma)},
            {"quiver", encode(adjacency_quiver(sigma))},
            {"b_matrix", after},
            {"diff", diff},
            {"agrees_with_mutation", mutate_matrix(before, k) == after}};
}

json op_surface_potential(const json& req) {
    Triangulation tau = resolve_triangulation(need(req, "triangulation"));
    QP qp;
    if (req.contains("x")) {
        const json& xs = req.at("x");
        if (!xs.is_array()) fail("InvalidInput", "\"x\" must be an array of puncture coefficients");
        std::vector<Scalar> x;
        for (const json& v : xs) x.push_back(v.is_number_integer() ? Scalar(v.get<long>()) : Scalar::parse(v.get<std::string>()));
        qp = triangulation_potential(tau, x);
    } else {
        qp = triangulation_potential(tau);
    }
    return {{"punctures", tau.surface.punctures}, {"qp", encode(qp)}};
}

json op_surface_preset(const json& req) {
    if (!req.contains("name")) return {{"presets", preset_names()}};
    PresetParams params;
    params.g = get_int(req, "g", params.g);
    params.n = get_int(req, "n", params.n);
    params.c1 = get_int(req, "c1", params.c1);
    params.c2 = get_int(req, "c2", params.c2);
    params.t = get_int(req, "t", params.t);
    return encode(preset(get_string(req, "name"), params));
}

json op_catalog(const json& req) {
    if (!req.contains("name")) return {{"entries", catalog_names()}};
    CatalogEntry e = catalog(get_string(req, "name"));
    json pots = json::object();
    for (const auto& [name, s] : e.potentials) pots[name] = encode(e.quiver, s);
    json out = {{"name", e.name}, {"quiver", encode(e.quiver)}, {"potentials", pots}, {"notes", e.notes}};
    if (e.name == "T2") out["witness"] = encode(t2_witness());
    return out;
}

json op_normalize(const json& req) {
    QP qp = qp_of(req);
    NCElement target = potential_from_json(qp.quiver, need(req, "target"), trust_of(req));
    NormalizeResult r = normalize_toward(qp.quiver, qp.potential, target, get_int(req, "max_iter", 20));
    return {{"success", r.success},
            {"rounds", r.rounds},
            {"residual_shorts", r.residual_shorts},
            {"residual", encode(qp.quiver, r.residual)}};
}

json op_uniqueness(const json& req) {
    QP qp = qp_of(req);
    return encode(uniqueness_certificate(qp.quiver, qp.potential, get_int(req, "d", 8)), qp.quiver);
}

json op_rep_check(const json& req) {
    QP qp = qp_of(req);
    Representation m = resolve_rep(qp.quiver, need(req, "rep"));
    RelationReport r = check_relations(qp, m);
    return {{"ok", r.ok}, {"failing", r.failing}, {"nilpotency_index", nilpotency_index(qp.quiver, m)}};
}

json op_rep_mutate(const json& req) {
    QP qp = qp_of(req);
    Representation m = resolve_rep(qp.quiver, need(req, "rep"));
    int k = get_int(req, "k");
    if (k < 1 || k > qp.quiver.n()) fail("InvalidVertex", "vertex " + std::to_string(k) + " is not a vertex");
    RepMutation r = rep_mutate(qp, m, k);
    return {{"k", k}, {"dims", r.rep.dims}, {"qp", encode(r.premutated)}, {"rep", encode(r.rep)}};
}

json op_presets() { return {{"surface", preset_names()}, {"catalog", catalog_names()}}; }

// ---------------------------------------------------------------- CLI

namespace {

json parse_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedJson(what + ": " + e.what());
    }
}

json read_document(const std::string& path) {
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw UsageError("cannot read " + path);
        ss << f.rdbuf();
    }
    return parse_text(ss.str(), path);
}

// Inline JSON, a file holding JSON, or a bare word such as a preset name.
json flexible(const std::string& value) {
    if (!value.empty() && (value[0] == '{' || value[0] == '[')) return parse_text(value, "argument");
    std::ifstream f(value);
    if (f.good()) return read_document(value);
    return value;
}

std::vector<int> int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("not an integer list: " + text);
        }
    }
    return out;
}

struct Input {
    std::string in;
    std::string inline_json;
    std::string preset;

    void attach(CLI::App* app) {
        app->add_option("--in", in, "input JSON file (- for stdin)");
        app->add_option("--json", inline_json, "input JSON text");
        app->add_option("--preset", preset, "preset or catalog name");
    }

    json request(const char* key) const {
        json req = json::object();
        std::optional<json> doc;
        if (!inline_json.empty()) doc = parse_text(inline_json, "--json");
        if (!in.empty()) doc = read_document(in);
        if (doc) {
            if (doc->is_object() && doc->contains(key))
                req = *doc;
            else
                req[key] = *doc;
        }
        if (!preset.empty()) req[key] = preset;
        if (!req.contains(key)) throw UsageError(std::string("no input: give --in, --json or --preset"));
        return req;
    }
};

struct IntFlag {
    std::optional<int> value;
    void attach(CLI::App* app, const std::string& name, const std::string& help) { app->add_option(name, value, help); }
    void into(json& req, const char* key) const {
        if (value) req[key] = *value;
    }
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quivers with potentials: mutation, Jacobian algebras, surfaces and classification", "qpw"};
    app.require_subcommand(1);

    Input input;
    IntFlag k, trust, depth, cap, p, d, vertex, max_iter, port, g, n, c1, c2, tpar;
    std::string seq, arc, target, rep, xs, marks, host = "127.0.0.1", name;
    bool keys = false;
    std::function<json()> action;
    bool serving = false;

    auto verb = [&](const std::string& nm, const std::string& help) {
        CLI::App* sub = app.add_subcommand(nm, help);
        return sub;
    };

    CLI::App* mutate_cmd = verb("mutate", "mutate a quiver at --k or along --seq");
    input.attach(mutate_cmd);
    k.attach(mutate_cmd, "--k", "vertex (1-based)");
    mutate_cmd->add_option("--seq", seq, "1,2,3 or {\"seq\":[...]} (inline or file)");
    mutate_cmd->callback([&] {
        action = [&] {
            json req = input.request("quiver");
            k.into(req, "k");
            if (!seq.empty()) {
                json s = flexible(seq);
                if (s.is_object() && s.contains("seq")) s = s.at("seq");
                req["seq"] = s.is_string() ? json(int_list(s.get<std::string>())) : s;
            }
            return op_quiver_mutate(req);
        };
    });

    auto qp_verb = [&](const std::string& nm, const std::string& help, auto body) {
        CLI::App* sub = verb(nm, help);
        input.attach(sub);
        trust.attach(sub, "--trust", "trust degree (default 16)");
        body(sub);
        return sub;
    };
    auto with_trust = [&](json req) {
        trust.into(req, "trust");
        return req;
    };

    qp_verb("qp-mutate", "QP mutation at --k (premutation then reduction)", [&](CLI::App* sub) {
        k.attach(sub, "--k", "vertex (1-based)");
        sub->callback([&] {
            action = [&] {
                json req = with_trust(input.request("qp"));
                k.into(req, "k");
                return op_qp_mutate(req);
            };
        });
    });
    qp_verb("reduce", "split off the trivial part of a QP", [&](CLI::App* sub) {
        sub->callback([&] { action = [&] { return op_reduce(with_trust(input.request("qp"))); }; });
    });
    qp_verb("nondeg-probe", "search mutation sequences for a degenerate 2-cycle", [&](CLI::App* sub) {
        depth.attach(sub, "--depth", "search depth (default 3)");
        sub->callback([&] {
            action = [&] {
                json req = with_trust(input.request("qp"));
                depth.into(req, "depth");
                return op_nondeg(req);
            };
        });
    });
    for (const std::string nm : {"classify", "mutation-class"}) {
        CLI::App* sub = verb(nm, nm == "classify" ? "representation type of the Jacobian algebras" : "enumerate the mutation class");
        input.attach(sub);
        cap.attach(sub, "--cap", "class size cap (default 50000)");
        if (nm == "mutation-class") sub->add_flag("--keys", keys, "list canonical keys");
        sub->callback([&, nm] {
            action = [&, nm] {
                json req = input.request("quiver");
                cap.into(req, "cap");
                if (nm == "classify") return op_classify(req);
                if (keys) req["keys"] = true;
                return op_mutation_class(req);
            };
        });
    }
    qp_verb("jacobian-dim", "dimensions of the truncated Jacobian algebra", [&](CLI::App* sub) {
        p.attach(sub, "--p", "truncation order (default 8)");
        sub->callback([&] {
            action = [&] {
                json req = with_trust(input.request("qp"));
                p.into(req, "p");
                return op_jacobian_dim(req);
            };
        });
    });
    qp_verb("corner-test", "do all cycles at --vertex of length d..p-1 vanish", [&](CLI::App* sub) {
        vertex.attach(sub, "--vertex", "vertex (1-based)");
        d.attach(sub, "--d", "shortest cycle length (default 3)");
        p.attach(sub, "--p", "truncation order (default d+1)");
        sub->callback([&] {
            action = [&] {
                json req = with_trust(input.request("qp"));
                vertex.into(req, "vertex");
                d.into(req, "d");
                p.into(req, "p");
                return op_corner_test(req);
            };
        });
    });
    qp_verb("normalize", "kill the difference to --target by unitriangular substitutions", [&](CLI::App* sub) {
        sub->add_option("--target", target, "target potential JSON (inline or file)");
        max_iter.attach(sub, "--max-iter", "rounds (default 20)");
        sub->callback([&] {
            action = [&] {
                json req = with_trust(input.request("qp"));
                if (!target.empty()) req["target"] = flexible(target);
                max_iter.into(req, "max_iter");
                return op_normalize(req);
            };
        });
    });
    qp_verb("uniqueness-cert", "bounded certificate that every higher term can be removed", [&](CLI::App* sub) {
        d.attach(sub, "--d", "degree bound (default 8)");
        sub->callback([&] {
            action = [&] {
                json req = with_trust(input.request("qp"));
                d.into(req, "d");
                return op_uniqueness(req);
            };
        });
    });

    CLI::App* surface_cmd = verb("surface", "triangulated surfaces");
    surface_cmd->require_subcommand(1);
    CLI::App* s_rank = surface_cmd->add_subcommand("rank", "rank of a marked surface");
    input.attach(s_rank);
    g.attach(s_rank, "--g", "genus");
    s_rank->add_option("--marks", marks, "marked points per boundary component, e.g. 2,1");
    IntFlag punct;
    punct.attach(s_rank, "--punctures", "number of punctures");
    s_rank->callback([&] {
        action = [&] {
            json req;
            if (g.value) {
                json s = {{"g", *g.value}, {"marks", marks.empty() ? std::vector<int>{} : int_list(marks)}, {"p", 0}};
                punct.into(s, "p");
                req["surface"] = s;
            } else {
                req = input.request("triangulation");
                const json& t = req.at("triangulation");
                if (t.is_object() && !t.contains("triangles")) req = {{"surface", t}};
            }
            return op_surface_rank(req);
        };
    });
    for (const std::string nm : {"quiver", "flip", "potential"}) {
        CLI::App* sub = surface_cmd->add_subcommand(nm, nm == "quiver"   ? "adjacency quiver of a triangulation"
                                                        : nm == "flip" ? "flip --arc and compare with mutation"
                                                                       : "potential of a triangulation");
        input.attach(sub);
        if (nm == "flip") sub->add_option("--arc", arc, "arc name");
        if (nm == "potential") sub->add_option("--x", xs, "puncture coefficients, e.g. 1,1,2");
        sub->callback([&, nm] {
            action = [&, nm] {
                json req = input.request("triangulation");
                if (nm == "quiver") return op_surface_quiver(req);
                if (nm == "flip") {
                    if (!arc.empty()) req["arc"] = arc;
                    return op_surface_flip(req);
                }
                if (!xs.empty()) {
                    json x = json::array();
                    std::stringstream ss(xs);
                    std::string item;
                    while (std::getline(ss, item, ',')) x.push_back(item);
                    req["x"] = x;
                }
                return op_surface_potential(req);
            };
        });
    }
    CLI::App* s_preset = surface_cmd->add_subcommand("preset", "preset triangulations");
    s_preset->add_option("name", name, "preset name (omit to list)");
    g.attach(s_preset, "--g", "genus for 4g-gon");
    n.attach(s_preset, "--n", "polygon size for ngon-fan");
    c1.attach(s_preset, "--c1", "outer marks for annulus");
    c2.attach(s_preset, "--c2", "inner marks for annulus");
    tpar.attach(s_preset, "--t", "chain length for digon-skewed");
    s_preset->callback([&] {
        action = [&] {
            json req = json::object();
            if (!name.empty()) req["name"] = name;
            g.into(req, "g");
            n.into(req, "n");
            c1.into(req, "c1");
            c2.into(req, "c2");
            tpar.into(req, "t");
            return op_surface_preset(req);
        };
    });

    CLI::App* catalog_cmd = verb("catalog", "catalog entries (omit the name to list)");
    catalog_cmd->add_option("name", name, "entry, e.g. T2 or T2.W");
    catalog_cmd->callback([&] {
        action = [&] {
            json req = json::object();
            if (!name.empty()) req["name"] = name;
            return op_catalog(req);
        };
    });

    CLI::App* rep_cmd = verb("rep", "representations of Jacobian algebras");
    rep_cmd->require_subcommand(1);
    for (const std::string nm : {"check", "mutate"}) {
        CLI::App* sub = rep_cmd->add_subcommand(nm, nm == "check" ? "check the relations" : "mutate at --k");
        input.attach(sub);
        trust.attach(sub, "--trust", "trust degree (default 16)");
        sub->add_option("--rep", rep, "representation JSON (inline or file) or t2_witness");
        if (nm == "mutate") k.attach(sub, "--k", "vertex (1-based)");
        sub->callback([&, nm] {
            action = [&, nm] {
                json req = with_trust(input.request("qp"));
                if (!rep.empty()) req["rep"] = flexible(rep);
                if (nm == "check") return op_rep_check(req);
                k.into(req, "k");
                return op_rep_mutate(req);
            };
        });
    }

    CLI::App* serve_cmd = verb("serve", "JSON over HTTP on the loopback interface");
    port.attach(serve_cmd, "--port", "port (default 8080)");
    serve_cmd->add_option("--host", host, "bind address (default 127.0.0.1)");
    serve_cmd->callback([&] { serving = true; });

    std::vector<std::string> argv_store{"qpw"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (serving) {
        Server server;
        int bound = server.bind(host, port.value.value_or(8080));
        if (bound < 0) {
            err << "error: cannot bind " << host << ":" << port.value.value_or(8080) << "\n";
            return 1;
        }
        err << "serving on http://" << host << ":" << bound << "\n";
        server.listen();
        return 0;
    }

    try {
        out << dump(action());
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const MalformedJson& e) {
        out << dump(error_json("MalformedJson", e.what()));
        err << "error: malformed JSON\n";
        return 2;
    } catch (const Error& e) {
        out << dump(error_json(e.name(), e.detail()));
        err << "error: " << e.name() << ": " << e.detail() << "\n";
        return e.name() == "InvalidInput" ? 2 : 1;
    } catch (const json::exception& e) {
        out << dump(error_json("InvalidInput", e.what()));
        err << "error: InvalidInput\n";
        return 2;
    }
}

// ---------------------------------------------------------------- HTTP

HttpResponse handle_request(const std::string& method, const std::string& path, const std::string& body) {
    auto reply = [](int status, const json& j) { return HttpResponse{status, dump(j)}; };
    using Op = json (*)(const json&);
    static const std::map<std::string, Op> routes{
        {"/quiver/mutate", op_quiver_mutate},       {"/qp/mutate", op_qp_mutate},
        {"/qp/nondeg", op_nondeg},                  {"/classify", op_classify},
        {"/surface/flip", op_surface_flip},         {"/surface/potential", op_surface_potential},
    };
    try {
        if (path == "/presets") {
            if (method != "GET") return reply(405, error_json("MethodNotAllowed", "use GET"));
            return reply(200, op_presets());
        }
        const std::string prefix = "/catalog/";
        bool is_catalog = path.rfind(prefix, 0) == 0 && path.size() > prefix.size();
        auto it = routes.find(path);
        if (!is_catalog && it == routes.end()) return reply(404, error_json("NotFound", path));
        if (method != "POST" && !(is_catalog && method == "GET"))
            return reply(405, error_json("MethodNotAllowed", "use POST"));
        json req = json::object();
        if (!body.empty() || !is_catalog) {
            try {
                req = json::parse(body);
            } catch (const json::parse_error& e) {
                return reply(400, error_json("MalformedJson", e.what()));
            }
            if (!req.is_object()) return reply(400, error_json("MalformedJson", "request body must be a JSON object"));
        }
        if (is_catalog) {
            req["name"] = path.substr(prefix.size());
            return reply(200, op_catalog(req));
        }
        return reply(200, it->second(req));
    } catch (const Error& e) {
        return reply(e.name() == "InvalidInput" ? 400 : 422, error_json(e.name(), e.detail()));
    } catch (const json::exception& e) {
        return reply(400, error_json("InvalidInput", e.what()));
    }
}

struct Server::Impl {
    httplib::Server http;
};

Server::Server() : impl_(std::make_unique<Impl>()) {
    auto handler = [](const httplib::Request& req, httplib::Response& res) {
        HttpResponse r = handle_request(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    impl_->http.Get(R"(/.*)", handler);
    impl_->http.Post(R"(/.*)", handler);
}

Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
    if (port == 0) return impl_->http.bind_to_any_port(host);
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

} // namespace qpw
