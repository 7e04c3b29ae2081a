// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/protocol.hpp"

#include <openssl/evp.h>
#include <sys/stat.h>

#include <cstring>
#include <fstream>
#include <map>

#include "awc/errors.hpp"

namespace awc {

namespace {

constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kMaxTermLen = 1 << 16;
constexpr std::size_t kMaxCount = 1 << 24;
constexpr std::size_t kMaxSiblings = 64;

Hash32 sha256_of(std::span<const std::uint8_t> data) {
    Hash32 out;
    unsigned int len = 32;
    EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
    return out;
}

class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v) {
        for (int i = 1; i >= 0; --i)
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u32(std::uint32_t v) {
        for (int i = 3; i >= 0; --i)
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 7; i >= 0; --i)
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void bytes(std::span<const std::uint8_t> data) {
        buf_.insert(buf_.end(), data.begin(), data.end());
    }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        buf_.insert(buf_.end(), s.begin(), s.end());
    }
    void field(const FieldElement& x) {
        std::array<std::uint8_t, 32> b;
        x.to_bytes(b);
        bytes(b);
    }
    void g1(const G1Element& p) {
        std::array<std::uint8_t, 32> b;
        detail::g1_to_bytes(p, b);
        bytes(b);
    }
    void g2(const G2Element& p) {
        std::array<std::uint8_t, 64> b;
        detail::g2_to_bytes(p, b);
        bytes(b);
    }
    void checksum_here() {
        Hash32 h = sha256_of(buf_);
        bytes(h);
    }
    std::vector<std::uint8_t> take() { return std::move(buf_); }
    const std::vector<std::uint8_t>& view() const { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

    bool ok() const { return ok_; }
    bool at_end() const { return pos_ == data_.size(); }
    std::size_t pos() const { return pos_; }
    std::span<const std::uint8_t> consumed() const { return data_.subspan(0, pos_); }

    std::uint8_t u8() { return take_int<std::uint8_t>(1); }
    std::uint16_t u16() { return take_int<std::uint16_t>(2); }
    std::uint32_t u32() { return take_int<std::uint32_t>(4); }
    std::uint64_t u64() { return take_int<std::uint64_t>(8); }

    std::span<const std::uint8_t> take(std::size_t n) {
        if (!ok_ || data_.size() - pos_ < n) {
            ok_ = false;
            return {};
        }
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    std::string str(std::size_t max_len = kMaxTermLen) {
        std::uint32_t len = u32();
        if (!ok_ || len > max_len) {
            ok_ = false;
            return {};
        }
        auto b = take(len);
        if (!ok_)
            return {};
        return {reinterpret_cast<const char*>(b.data()), b.size()};
    }

    FieldElement field() {
        auto b = take(32);
        FieldElement out;
        if (!ok_ || !FieldElement::from_bytes(std::span<const std::uint8_t, 32>(b.data(), 32), out))
            ok_ = false;
        return out;
    }

    G1Element g1() {
        auto b = take(32);
        G1Element out;
        if (!ok_ || !detail::g1_from_bytes(std::span<const std::uint8_t, 32>(b.data(), 32), out))
            ok_ = false;
        return out;
    }

    G2Element g2(bool check_subgroup) {
        auto b = take(64);
        G2Element out;
        if (!ok_ ||
            !detail::g2_from_bytes(std::span<const std::uint8_t, 64>(b.data(), 64), out, check_subgroup))
            ok_ = false;
        return out;
    }

    Hash32 hash() {
        auto b = take(32);
        Hash32 out{};
        if (ok_)
            std::memcpy(out.data(), b.data(), 32);
        return out;
    }

    void fail() { ok_ = false; }

private:
    template <typename T>
    T take_int(std::size_t n) {
        auto b = take(n);
        if (!ok_)
            return T{};
        std::uint64_t v = 0;
        for (auto byte : b)
            v = (v << 8) | byte;
        return static_cast<T>(v);
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
    bool ok_ = true;
};

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out)
        throw IoError("write failed: " + path);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Sectioned container: magic(4) version(1) section_count(4), then per section
// tag(4) length(4) payload sha256(payload).
std::vector<std::uint8_t> pack_sections(
    const char (&magic)[5],
    const std::vector<std::pair<const char*, std::vector<std::uint8_t>>>& sections) {
    Writer w;
    w.bytes({reinterpret_cast<const std::uint8_t*>(magic), 4});
    w.u8(kVersion);
    w.u32(static_cast<std::uint32_t>(sections.size()));
    for (const auto& [tag, payload] : sections) {
        w.bytes({reinterpret_cast<const std::uint8_t*>(tag), 4});
        w.u32(static_cast<std::uint32_t>(payload.size()));
        w.bytes(payload);
        w.bytes(sha256_of(payload));
    }
    return w.take();
}

std::map<std::string, std::vector<std::uint8_t>> unpack_sections(
    std::span<const std::uint8_t> data, const char (&magic)[5]) {
    Reader r(data);
    auto m = r.take(4);
    if (!r.ok() || std::memcmp(m.data(), magic, 4) != 0)
        throw FormatError(std::string("bad magic, expected ") + magic);
    std::uint8_t version = r.u8();
    if (!r.ok() || version != kVersion)
        throw FormatError("unsupported version");
    std::uint32_t count = r.u32();
    if (!r.ok() || count > 64)
        throw FormatError("corrupt section table");
    std::map<std::string, std::vector<std::uint8_t>> out;
    for (std::uint32_t i = 0; i < count; ++i) {
        auto tag = r.take(4);
        std::uint32_t len = r.u32();
        auto payload = r.take(len);
        auto sum = r.take(32);
        if (!r.ok())
            throw FormatError("truncated section");
        Hash32 expect = sha256_of(payload);
        if (std::memcmp(expect.data(), sum.data(), 32) != 0)
            throw FormatError("checksum mismatch");
        out.emplace(std::string(reinterpret_cast<const char*>(tag.data()), 4),
                    std::vector<std::uint8_t>(payload.begin(), payload.end()));
    }
    if (!r.at_end())
        throw FormatError("trailing bytes");
    return out;
}

const std::vector<std::uint8_t>& section(
    const std::map<std::string, std::vector<std::uint8_t>>& sections, const char* tag) {
    auto it = sections.find(tag);
    if (it == sections.end())
        throw FormatError(std::string("missing section ") + tag);
    return it->second;
}

void encode_merkle_proof(Writer& w, const MerkleProof& proof) {
    w.str(proof.term);
    w.g1(proof.acc);
    w.u64(proof.position);
    w.u32(static_cast<std::uint32_t>(proof.siblings.size()));
    for (const auto& h : proof.siblings)
        w.bytes(h);
}

bool decode_merkle_proof(Reader& r, MerkleProof& out) {
    out.term = r.str();
    out.acc = r.g1();
    out.position = r.u64();
    std::uint32_t count = r.u32();
    if (!r.ok() || count > kMaxSiblings)
        return false;
    out.siblings.resize(count);
    for (auto& h : out.siblings)
        h = r.hash();
    return r.ok();
}

}  // namespace

// ------------------------------------------------------------------ params
void save_params(const std::string& path, const PublicParams& pp) {
    Writer meta;
    meta.u64(pp.n);
    meta.u32(static_cast<std::uint32_t>(pp.powers_g1.size()));
    meta.u32(static_cast<std::uint32_t>(pp.powers_g2.size()));
    meta.bytes(pp.verify_key.bytes);
    meta.bytes(pp.fingerprint);

    Writer pg1;
    for (const auto& p : pp.powers_g1)
        pg1.g1(p);
    Writer pg2;
    for (const auto& p : pp.powers_g2)
        pg2.g2(p);

    write_file(path, pack_sections("AWCP", {{"meta", meta.take()},
                                            {"pg1 ", pg1.take()},
                                            {"pg2 ", pg2.take()}}));
}

PublicParams load_params(const std::string& path) {
    auto data = read_file(path);
    auto sections = unpack_sections(data, "AWCP");

    PublicParams pp;
    {
        Reader r(section(sections, "meta"));
        pp.n = r.u64();
        std::uint32_t g1_count = r.u32();
        std::uint32_t g2_count = r.u32();
        auto vk = r.take(32);
        if (r.ok())
            std::memcpy(pp.verify_key.bytes.data(), vk.data(), 32);
        pp.fingerprint = r.hash();
        if (!r.ok() || !r.at_end() || g1_count == 0 || g2_count == 0 ||
            g1_count > pp.n + 1 || g2_count > pp.n + 1 || g1_count > kMaxCount)
            throw FormatError("params meta corrupt");
        pp.powers_g1.resize(g1_count);
        pp.powers_g2.resize(g2_count);
    }
    {
        Reader r(section(sections, "pg1 "));
        for (auto& p : pp.powers_g1)
            p = r.g1();
        if (!r.ok() || !r.at_end())
            throw FormatError("params g1 ladder corrupt");
    }
    {
        Reader r(section(sections, "pg2 "));
        for (auto& p : pp.powers_g2)
            p = r.g2(false);
        if (!r.ok() || !r.at_end())
            throw FormatError("params g2 ladder corrupt");
    }
    return pp;
}

// ------------------------------------------------------------------ bundle
void save_bundle(const std::string& path, const Bundle& bundle) {
    if (bundle.table.values.size() != bundle.index.dictionary.size())
        throw Error("bundle: table/dictionary size mismatch");

    Writer meta;
    meta.u64(bundle.epoch);
    meta.u32(static_cast<std::uint32_t>(bundle.index.dictionary.size()));
    meta.u32(static_cast<std::uint32_t>(bundle.index.registry.size()));

    Writer dict;
    for (const auto& term : bundle.index.dictionary)
        dict.str(term);

    Writer post;
    for (const auto& ids : bundle.index.postings) {
        post.u32(static_cast<std::uint32_t>(ids.size()));
        for (const auto& id : ids)
            post.field(id);
    }

    Writer accs;
    for (const auto& acc : bundle.table.values)
        accs.g1(acc);

    Writer regs;
    for (const auto& [id, source] : bundle.index.registry) {
        regs.field(id);
        regs.str(source);
    }

    Writer root;
    root.bytes(bundle.tree.root());

    write_file(path, pack_sections("AWCB", {{"meta", meta.take()},
                                            {"dict", dict.take()},
                                            {"post", post.take()},
                                            {"accs", accs.take()},
                                            {"regs", regs.take()},
                                            {"root", root.take()}}));
}

Bundle load_bundle(const std::string& path) {
    auto data = read_file(path);
    auto sections = unpack_sections(data, "AWCB");

    Bundle bundle;
    std::uint32_t term_count = 0;
    std::uint32_t doc_count = 0;
    {
        Reader r(section(sections, "meta"));
        bundle.epoch = r.u64();
        term_count = r.u32();
        doc_count = r.u32();
        if (!r.ok() || !r.at_end() || term_count > kMaxCount || doc_count > kMaxCount)
            throw FormatError("bundle meta corrupt");
    }
    {
        Reader r(section(sections, "dict"));
        bundle.index.dictionary.reserve(term_count);
        for (std::uint32_t i = 0; i < term_count; ++i)
            bundle.index.dictionary.push_back(r.str());
        if (!r.ok() || !r.at_end())
            throw FormatError("bundle dictionary corrupt");
        for (std::size_t i = 1; i < bundle.index.dictionary.size(); ++i)
            if (bundle.index.dictionary[i] <= bundle.index.dictionary[i - 1])
                throw FormatError("bundle dictionary not strictly sorted");
    }
    {
        Reader r(section(sections, "post"));
        bundle.index.postings.resize(term_count);
        for (auto& ids : bundle.index.postings) {
            std::uint32_t count = r.u32();
            if (!r.ok() || count > kMaxCount)
                throw FormatError("bundle postings corrupt");
            ids.resize(count);
            for (auto& id : ids)
                id = r.field();
        }
        if (!r.ok() || !r.at_end())
            throw FormatError("bundle postings corrupt");
    }
    {
        Reader r(section(sections, "accs"));
        bundle.table.values.resize(term_count);
        for (auto& acc : bundle.table.values)
            acc = r.g1();
        if (!r.ok() || !r.at_end())
            throw FormatError("bundle accumulation table corrupt");
        bundle.table.epoch = bundle.epoch;
    }
    {
        Reader r(section(sections, "regs"));
        for (std::uint32_t i = 0; i < doc_count; ++i) {
            FieldElement id = r.field();
            std::string source = r.str();
            if (r.ok())
                bundle.index.registry.emplace(id, std::move(source));
        }
        if (!r.ok() || !r.at_end())
            throw FormatError("bundle registry corrupt");
    }

    std::vector<MerkleLeaf> leaves;
    leaves.reserve(term_count);
    for (std::uint32_t i = 0; i < term_count; ++i)
        leaves.push_back({bundle.index.dictionary[i], bundle.table.values[i]});
    bundle.tree = MerkleTree::build(std::move(leaves));
    {
        Reader r(section(sections, "root"));
        Hash32 stored = r.hash();
        if (!r.ok() || !r.at_end() || stored != bundle.tree.root())
            throw FormatError("bundle root mismatch");
    }
    return bundle;
}

// ------------------------------------------------------------------ digest
void save_digest(const std::string& path, const Digest& digest) {
    Writer w;
    w.bytes({reinterpret_cast<const std::uint8_t*>("AWCD"), 4});
    w.u8(kVersion);
    w.bytes(digest.root);
    w.u64(digest.epoch);
    w.bytes(digest.params_fingerprint);
    w.u32(static_cast<std::uint32_t>(digest.signature.size()));
    w.bytes(digest.signature);
    write_file(path, w.take());
}

Digest load_digest(const std::string& path) {
    auto data = read_file(path);
    Reader r(data);
    auto m = r.take(4);
    if (!r.ok() || std::memcmp(m.data(), "AWCD", 4) != 0)
        throw FormatError("digest: bad magic");
    if (r.u8() != kVersion || !r.ok())
        throw FormatError("digest: unsupported version");
    Digest digest;
    digest.root = r.hash();
    digest.epoch = r.u64();
    digest.params_fingerprint = r.hash();
    std::uint32_t sig_len = r.u32();
    if (!r.ok() || sig_len != digest.signature.size())
        throw FormatError("digest: bad signature length");
    auto sig = r.take(sig_len);
    if (!r.ok() || !r.at_end())
        throw FormatError("digest: truncated or trailing bytes");
    std::memcpy(digest.signature.data(), sig.data(), sig_len);
    return digest;
}

// ---------------------------------------------------------------- keystore
void save_keystore(const std::string& path, const Keystore& ks) {
    Writer w;
    w.bytes({reinterpret_cast<const std::uint8_t*>("AWCK"), 4});
    w.u8(kVersion);
    w.field(ks.sk.s);
    w.bytes(ks.sk.signing_key.seed);
    w.bytes(ks.params_fingerprint);
    w.checksum_here();
    write_file(path, w.view());
    ::chmod(path.c_str(), 0600);
}

Keystore load_keystore(const std::string& path) {
    auto data = read_file(path);
    if (data.size() < 32)
        throw FormatError("keystore: truncated");
    Hash32 expect = sha256_of({data.data(), data.size() - 32});
    if (std::memcmp(expect.data(), data.data() + data.size() - 32, 32) != 0)
        throw FormatError("keystore: checksum mismatch");
    Reader r({data.data(), data.size() - 32});
    auto m = r.take(4);
    if (!r.ok() || std::memcmp(m.data(), "AWCK", 4) != 0)
        throw FormatError("keystore: bad magic");
    if (r.u8() != kVersion || !r.ok())
        throw FormatError("keystore: unsupported version");
    Keystore ks;
    ks.sk.s = r.field();
    auto seed = r.take(32);
    if (r.ok())
        std::memcpy(ks.sk.signing_key.seed.data(), seed.data(), 32);
    ks.params_fingerprint = r.hash();
    if (!r.ok() || !r.at_end())
        throw FormatError("keystore: corrupt");
    return ks;
}

// ----------------------------------------------------------------- request
std::vector<std::uint8_t> encode_request(const QueryRequest& request) {
    Writer w;
    w.bytes({reinterpret_cast<const std::uint8_t*>("AWCQ"), 4});
    w.u8(kVersion);
    w.u64(request.epoch);
    w.u16(static_cast<std::uint16_t>(request.terms.size()));
    for (const auto& term : request.terms)
        w.str(term);
    return w.take();
}

bool decode_request(std::span<const std::uint8_t> bytes, QueryRequest& out) {
    Reader r(bytes);
    auto m = r.take(4);
    if (!r.ok() || std::memcmp(m.data(), "AWCQ", 4) != 0)
        return false;
    if (r.u8() != kVersion || !r.ok())
        return false;
    out.epoch = r.u64();
    std::uint16_t count = r.u16();
    if (!r.ok())
        return false;
    out.terms.clear();
    for (std::uint16_t i = 0; i < count; ++i)
        out.terms.push_back(r.str());
    return r.ok() && r.at_end();
}

// ---------------------------------------------------------------- response
std::vector<std::uint8_t> encode_response(const QueryResponse& response) {
    Writer w;
    w.bytes({reinterpret_cast<const std::uint8_t*>("AWCR"), 4});
    w.u8(kVersion);
    w.u8(static_cast<std::uint8_t>(response.status));
    w.u64(response.epoch);
    w.u32(static_cast<std::uint32_t>(response.answer.size()));
    for (const auto& id : response.answer)
        w.field(id);
    if (response.status == ResponseStatus::Ok) {
        const Proof& proof = response.proof;
        w.u32(static_cast<std::uint32_t>(proof.part_a.size()));
        for (const auto& c : proof.part_a)
            w.field(c);
        w.u16(static_cast<std::uint16_t>(proof.part_b.size()));
        for (const auto& ev : proof.part_b) {
            w.str(ev.term);
            w.u8(ev.known ? 0 : 1);
            if (ev.known) {
                encode_merkle_proof(w, ev.membership);
            } else {
                std::uint8_t flags = (ev.absence.below ? 1 : 0) | (ev.absence.above ? 2 : 0);
                w.u8(flags);
                if (ev.absence.below)
                    encode_merkle_proof(w, *ev.absence.below);
                if (ev.absence.above)
                    encode_merkle_proof(w, *ev.absence.above);
            }
        }
        w.u32(static_cast<std::uint32_t>(proof.part_c.size()));
        for (const auto& wit : proof.part_c)
            w.g1(wit);
        w.u32(static_cast<std::uint32_t>(proof.part_d.size()));
        for (const auto& wit : proof.part_d)
            w.g2(wit);
    }
    w.checksum_here();
    return w.take();
}

bool decode_response(std::span<const std::uint8_t> bytes, QueryResponse& out) {
    if (bytes.size() < 32)
        return false;
    Hash32 expect = sha256_of(bytes.subspan(0, bytes.size() - 32));
    if (std::memcmp(expect.data(), bytes.data() + bytes.size() - 32, 32) != 0)
        return false;
    Reader r(bytes.subspan(0, bytes.size() - 32));
    auto m = r.take(4);
    if (!r.ok() || std::memcmp(m.data(), "AWCR", 4) != 0)
        return false;
    if (r.u8() != kVersion || !r.ok())
        return false;
    std::uint8_t status = r.u8();
    if (status > static_cast<std::uint8_t>(ResponseStatus::Internal))
        return false;
    out.status = static_cast<ResponseStatus>(status);
    out.epoch = r.u64();
    std::uint32_t answer_count = r.u32();
    if (!r.ok() || answer_count > kMaxCount)
        return false;
    out.answer.resize(answer_count);
    for (auto& id : out.answer)
        id = r.field();
    if (out.status == ResponseStatus::Ok) {
        Proof& proof = out.proof;
        std::uint32_t a_count = r.u32();
        if (!r.ok() || a_count == 0 || a_count > kMaxCount)
            return false;
        proof.part_a.resize(a_count);
        for (auto& c : proof.part_a)
            c = r.field();
        std::uint16_t b_count = r.u16();
        if (!r.ok())
            return false;
        proof.part_b.resize(b_count);
        for (auto& ev : proof.part_b) {
            ev.term = r.str();
            std::uint8_t kind = r.u8();
            if (!r.ok() || kind > 1)
                return false;
            ev.known = kind == 0;
            if (ev.known) {
                if (!decode_merkle_proof(r, ev.membership))
                    return false;
                if (ev.membership.term != ev.term)
                    return false;
            } else {
                std::uint8_t flags = r.u8();
                if (!r.ok() || flags == 0 || flags > 3)
                    return false;
                if (flags & 1) {
                    ev.absence.below.emplace();
                    if (!decode_merkle_proof(r, *ev.absence.below))
                        return false;
                }
                if (flags & 2) {
                    ev.absence.above.emplace();
                    if (!decode_merkle_proof(r, *ev.absence.above))
                        return false;
                }
            }
        }
        std::uint32_t c_count = r.u32();
        if (!r.ok() || c_count > kMaxCount)
            return false;
        proof.part_c.resize(c_count);
        for (auto& wit : proof.part_c)
            wit = r.g1();
        std::uint32_t d_count = r.u32();
        if (!r.ok() || d_count > kMaxCount)
            return false;
        proof.part_d.resize(d_count);
        for (auto& wit : proof.part_d)
            wit = r.g2(true);
        proof.epoch = out.epoch;
    }
    return r.ok() && r.at_end();
}

void save_response(const std::string& path, const QueryResponse& response) {
    auto data = encode_response(response);
    write_file(path, data);
}

QueryResponse load_response(const std::string& path) {
    auto data = read_file(path);
    QueryResponse out;
    if (!decode_response(data, out))
        throw FormatError("response: malformed");
    return out;
}

}  // namespace awc
