#include "cliffreal/report.hpp"

#include <mutex>
#include <sstream>
#include <thread>

#include "cliffreal/errors.hpp"

namespace cliffreal {

FieldSpec parse_field(const std::string& text) {
    if (text == "Q" || text == "q" || text == "rationals") return FieldSpec{0};
    try {
        size_t pos = 0;
        long p = std::stol(text, &pos);
        if (pos != text.size() || p <= 0)
            fail(ErrorCode::ConfigInvalid, "field must be Q or a prime: " + text);
        make_field(FieldSpec{p});  // validates odd prime
        return FieldSpec{p};
    } catch (const CliffordError&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorCode::ConfigInvalid, "field must be Q or a prime: " + text);
    }
}

namespace {

// "name:[1,2,3]" list part
std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        fail(ErrorCode::ConfigInvalid, "expected [..] list: " + text);
    std::string inner = text.substr(1, text.size() - 2);
    if (inner.empty()) return out;
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stol(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorCode::ConfigInvalid, "bad list entry: " + item);
        }
    }
    return out;
}

Matrix shorthand_gram(const std::string& text, const FieldCtx& F) {
    size_t m = 0;
    std::vector<long> aniso;
    std::string rest = text;
    while (!rest.empty()) {
        size_t plus = rest.find('+');
        std::string part = rest.substr(0, plus);
        rest = plus == std::string::npos ? "" : rest.substr(plus + 1);
        if (part.rfind("hyperbolic:", 0) == 0) {
            std::string num = part.substr(11);
            try {
                size_t pos = 0;
                long v = std::stol(num, &pos);
                if (pos != num.size() || v < 0) throw std::invalid_argument(num);
                m = static_cast<size_t>(v);
            } catch (const std::exception&) {
                fail(ErrorCode::ConfigInvalid, "bad hyperbolic count: " + part);
            }
        } else if (part.rfind("anisotropic:", 0) == 0) {
            aniso = parse_long_list(part.substr(12));
        } else {
            fail(ErrorCode::ConfigInvalid, "unknown form component: " + part);
        }
    }
    size_t n = 2 * m + aniso.size();
    if (n == 0) fail(ErrorCode::ConfigInvalid, "empty form: " + text);
    Matrix B(n, n, F.spec());
    for (size_t i = 0; i < m; ++i) {
        B.at(2 * i, 2 * i + 1) = F.one();
        B.at(2 * i + 1, 2 * i) = F.one();
    }
    for (size_t i = 0; i < aniso.size(); ++i)
        B.at(2 * m + i, 2 * m + i) = F.from_long(2 * aniso[i]);  // polar entry 2 q(e_i)
    return B;
}

Scalar scalar_from_json(const Json& j, const FieldCtx& F) {
    if (j.is_string()) return F.parse(j.get<std::string>());
    if (j.is_number_integer()) return F.from_long(j.get<long>());
    fail(ErrorCode::ConfigInvalid, "scalar must be a string or integer: " + j.dump());
}

}  // namespace

Matrix parse_form(const std::string& text, const FieldCtx& F) {
    if (text.empty()) fail(ErrorCode::ConfigInvalid, "empty form");
    if (text.front() != '[') return shorthand_gram(text, F);
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array() || j.empty())
        fail(ErrorCode::ConfigInvalid, "gram must be a JSON array of rows");
    size_t n = j.size();
    Matrix B(n, n, F.spec());
    for (size_t r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != n)
            fail(ErrorCode::ConfigInvalid, "gram row " + std::to_string(r) + " must have " +
                                               std::to_string(n) + " entries");
        for (size_t c = 0; c < n; ++c) {
            try {
                B.at(r, c) = scalar_from_json(j[r][c], F);
            } catch (const CliffordError& e) {
                if (e.code() == ErrorCode::ConfigInvalid) throw;
                fail(ErrorCode::ConfigInvalid, std::string("bad gram entry: ") + e.what());
            }
        }
    }
    return B;
}

Json field_to_json(const FieldSpec& f) {
    Json j;
    if (f.rationals()) {
        j["kind"] = "rationals";
    } else {
        j["kind"] = "prime";
        j["p"] = f.p;
    }
    return j;
}

Json matrix_to_json(const Matrix& M) {
    Json rows = Json::array();
    for (size_t r = 0; r < M.rows(); ++r) {
        Json row = Json::array();
        for (size_t c = 0; c < M.cols(); ++c) row.push_back(M.at(r, c).str());
        rows.push_back(row);
    }
    return rows;
}

Json mv_to_json(const Multivector& m) {
    Json terms = Json::array();
    for (const auto& [mask, c] : m.terms()) {
        Json gens = Json::array();
        for (size_t i = 0; i < 32; ++i)
            if (mask & (1u << i)) gens.push_back(i + 1);
        terms.push_back(Json::array({gens, c.str()}));
    }
    return terms;
}

Multivector mv_from_json(const CtxPtr& ctx, const Json& j) {
    if (!j.is_array()) fail(ErrorCode::ConfigInvalid, "multivector must be a JSON array of terms");
    const FieldCtx& F = ctx->field();
    std::vector<std::pair<std::uint32_t, Scalar>> entries;
    for (const Json& term : j) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_array())
            fail(ErrorCode::ConfigInvalid, "term must be [[generators], coeff]: " + term.dump());
        std::uint32_t mask = 0;
        long prev = 0;
        for (const Json& gi : term[0]) {
            if (!gi.is_number_integer())
                fail(ErrorCode::ConfigInvalid, "generator index must be an integer");
            long i = gi.get<long>();
            if (i <= prev || i > static_cast<long>(ctx->dim()))
                fail(ErrorCode::ConfigInvalid,
                     "generator indices must be strictly increasing in 1.." +
                         std::to_string(ctx->dim()));
            prev = i;
            mask |= 1u << (i - 1);
        }
        Scalar c = scalar_from_json(term[1], F);
        entries.emplace_back(mask, c);
    }
    return mv_from_entries(ctx, std::move(entries));
}

Json report_skeleton(const std::string& command, const RunConfig& cfg) {
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    Json c;
    c["field"] = field_to_json(cfg.field);
    c["form"] = cfg.form;
    c["seed"] = cfg.seed;
    c["cap_order"] = cfg.cap_order;
    j["config"] = c;
    j["checks"] = Json::array();
    j["pass"] = true;
    return j;
}

void add_check(Json& report, const std::string& name, bool pass, const Json& detail) {
    Json c;
    c["name"] = name;
    c["pass"] = pass;
    if (!detail.is_null()) c["detail"] = detail;
    report["checks"].push_back(c);
    if (!pass) report["pass"] = false;
}

bool report_passed(const Json& report) {
    return report.contains("pass") && report["pass"].is_boolean() && report["pass"].get<bool>();
}

namespace {

std::string compact(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream out;
    out << "command: " << compact(report["command"]) << "\n";
    out << "config: " << report["config"].dump() << "\n";
    for (const auto& [key, value] : report.items()) {
        if (key == "schema" || key == "command" || key == "config" || key == "checks" ||
            key == "pass")
            continue;
        out << key << ": " << compact(value) << "\n";
    }
    for (const Json& c : report["checks"]) {
        out << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << compact(c["name"]);
        if (c.contains("detail")) out << "  " << compact(c["detail"]);
        out << "\n";
    }
    out << "result: " << (report_passed(report) ? "PASS" : "FAIL") << "\n";
    return out.str();
}

void parallel_for_indexed(size_t n, int threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    size_t workers = std::min<size_t>(threads, n);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cliffreal
