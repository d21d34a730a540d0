use std::sync::LazyLock;

use super::record::{IdentityRecord, ParamSpec};
use crate::expr::parse;

/// `sum_{k=1}^n sum_{j=0}^{k-1} body`
fn ds(body: &str) -> String {
    format!("sum(k, 1, n, sum(j, 0, k - 1, {body}))")
}

const R_SHIFTS: &[&str] = &["0", "1/2", "-1/2", "1", "3/2", "1/3"];

struct Entry(IdentityRecord);

fn entry(id: &str, title: &str, lhs: &str, rhs: &str, anchor: &str) -> Entry {
    let parsed = |side: &str, src: &str| {
        parse(src).unwrap_or_else(|e| panic!("{id} {side} does not parse: {e}"))
    };
    Entry(IdentityRecord {
        id: id.into(),
        title: title.into(),
        lhs: parsed("lhs", lhs),
        rhs: parsed("rhs", rhs),
        params: Vec::new(),
        constraints: Vec::new(),
        min_n: 1,
        max_n_default: 25,
        anchor: anchor.into(),
        note: None,
    })
}

impl Entry {
    fn min_n(mut self, n: u32) -> Self {
        self.0.min_n = n;
        self
    }

    fn max_n(mut self, n: u32) -> Self {
        self.0.max_n_default = n;
        self
    }

    /// Single sums and kernel facts get a longer sweep.
    fn single(self) -> Self {
        self.max_n(60)
    }

    fn param(mut self, p: ParamSpec) -> Self {
        self.0.params.push(p);
        self
    }

    fn scalar(self, name: &str, values: &[&str]) -> Self {
        self.param(ParamSpec::scalar(name, values))
    }

    fn seq(self, name: &str) -> Self {
        self.param(ParamSpec::random_sequence(name, 0))
    }

    fn constraint(mut self, c: &str) -> Self {
        self.0.constraints.push(c.parse().expect("constraint"));
        self
    }

    fn note(mut self, text: &str) -> Self {
        self.0.note = Some(text.into());
        self
    }
}

static CATALOG: LazyLock<Vec<IdentityRecord>> = LazyLock::new(|| {
    let mut out: Vec<IdentityRecord> = master()
        .into_iter()
        .chain(harmonic())
        .chain(binomial())
        .chain(transforms())
        .map(|e| e.0)
        .collect();
    out.sort_by_key(|r| id_key(&r.id));
    out
});

/// Every identity in the catalog, sorted by id.
pub fn builtin_catalog() -> &'static [IdentityRecord] {
    &CATALOG
}

pub fn find(id: &str) -> Option<&'static IdentityRecord> {
    builtin_catalog().iter().find(|r| r.id == id)
}

/// Sort key: `I-9` < `I-10` < `I-10a`.
pub fn id_key(id: &str) -> (String, u32, String) {
    let (prefix, rest) = id.split_once('-').unwrap_or((id, ""));
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    let suffix = rest[digits.len()..].to_string();
    (prefix.to_string(), digits.parse().unwrap_or(0), suffix)
}

fn master() -> Vec<Entry> {
    let batir_rhs = "sum(k, 1, n, a(k) * sum(j, 1, k, b(j)))";
    vec![
        entry(
            "I-01",
            "interchange of a shifted double sum",
            "sum(p, 0, n - 1, sum(k, 1, n - p, a(p + k) * b(k)))",
            batir_rhs,
            "established a generalization of this theorem",
        )
        .seq("a")
        .seq("b")
        .min_n(0)
        .max_n(30),
        entry(
            "I-02",
            "reversed-index double sum",
            &ds("a(n - j) * b(k - j)"),
            batir_rhs,
            "which is a variation of",
        )
        .seq("a")
        .seq("b")
        .min_n(0)
        .max_n(30),
        entry(
            "I-03",
            "b = 1 with a_k/k",
            &ds("a(n - j) / (n - j)"),
            "sum(k, 1, n, a(k))",
            "replace a_k with a_k/k",
        )
        .seq("a")
        .min_n(0),
        entry(
            "I-04",
            "alternating b gives the odd-index sum",
            &ds("(-1)^(k - j + 1) * a(n - j)"),
            "sum(k, 0, floor((n - 1) / 2), a(2 * k + 1))",
            "set b_k=(-1)^k and use",
        )
        .seq("a")
        .min_n(0),
    ]
}

fn harmonic() -> Vec<Entry> {
    let parity = |even: &str, odd: &str| format!("(1 + (-1)^n) / 2 * ({even}) + (1 - (-1)^n) / 2 * ({odd})");
    vec![
        entry(
            "I-05",
            "harmonic number as a double sum",
            &ds("1 / (n - j)^2"),
            "H(n)",
            "Use a_k=1/k and a_k=(2k-1)^{-1}",
        ),
        entry(
            "I-06",
            "odd harmonic number as a double sum",
            &ds("1 / ((n - j) * (2 * (n - j) - 1))"),
            "O(n)",
            "Use a_k=1/k and a_k=(2k-1)^{-1}",
        ),
        entry(
            "I-07",
            "alternating linear weights give a square",
            &ds("(-1)^(k - j + 1) * (n - j)"),
            "(floor((n - 1) / 2) + 1)^2",
            "Use a_k=k in Theorem",
        )
        .min_n(0),
        entry(
            "I-08",
            "alternating reciprocals give an odd harmonic number",
            &ds("(-1)^(k - j + 1) / (n - j)"),
            "O(floor((n + 1) / 2))",
            "Use a_k=1/k in Theorem",
        )
        .note("index corrected from floor((n-1)/2), see E-08"),
        entry(
            "I-09",
            "alternating Fibonacci double sum",
            &ds("(-1)^(k - j + 1) * F(n - j)"),
            "F(2 * (floor((n - 1) / 2) + 1))",
            "Use a_k=F_k and a_k=L_k",
        ),
        entry(
            "I-10",
            "alternating Lucas double sum",
            &ds("(-1)^(k - j + 1) * L(n - j)"),
            "L(2 * (floor((n - 1) / 2) + 1)) - 2",
            "Use a_k=F_k and a_k=L_k",
        ),
        entry(
            "I-11",
            "Bernoulli-weighted alternating sum of any function",
            &ds("(-1)^(k - j) * f(n - j) * B(n - j)"),
            "f(1) / 2",
            "the fact that B_{2k+1}=0",
        )
        .param(ParamSpec::function(
            "f",
            "x",
            &["x", "x^2", "1 / (x + 1)", "B(x)", "x^3 - 2 * x + 7", "H(x)"],
        )),
        entry(
            "I-12",
            "squared Bernoulli numbers",
            &ds("(-1)^(k - j) * B(n - j)^2"),
            "-1 / 4",
            "the fact that B_{2k+1}=0",
        ),
        entry(
            "I-13",
            "Bernoulli numbers from Stirling numbers, double sum form",
            &ds("(-1)^(n - j) * fact(n - j - 1) / (n - j + 1) * S2(n, n - j)"),
            "B(n)",
            "double sum definition of Bernoulli numbers",
        ),
        entry(
            "I-13a",
            "Bernoulli numbers from Stirling numbers",
            "sum(k, 1, n, (-1)^k * fact(k) / (k + 1) * S2(n, k))",
            "B(n)",
            "Use the well-known result",
        )
        .single(),
        entry(
            "I-14",
            "shifted reciprocal weights give shifted harmonic differences",
            &ds("a(n - j) / (k - j + r)"),
            "sum(k, 1, n, a(k) * Hdiff(k, r))",
            "Use b_j=1/(j+r) in",
        )
        .seq("a")
        .scalar("r", R_SHIFTS)
        .note("H_{k+r} - H_r is encoded as Hdiff(k, r)"),
        entry(
            "I-15",
            "reciprocal weights give harmonic numbers",
            &ds("a(n - j) / (k - j)"),
            "sum(k, 1, n, a(k) * H(k))",
            "Setting r=0 in",
        )
        .seq("a"),
        entry(
            "I-16",
            "odd reciprocal weights give odd harmonic numbers",
            &ds("a(n - j) / (2 * k - 2 * j - 1)"),
            "sum(k, 1, n, a(k) * O(k))",
            "Setting r=0 in",
        )
        .seq("a"),
        entry(
            "I-17",
            "Stirling-harmonic double sum",
            &ds("(-1)^(n - j) * fact(n - j) / ((n - j + 1) * (k - j)) * S2(n, n - j)"),
            "-(n / 2) * B(n - 1)",
            "noting that",
        ),
        entry(
            "I-17a",
            "Stirling-harmonic single sum",
            "sum(k, 1, n, (-1)^k * fact(k) / (k + 1) * S2(n, k) * H(k))",
            "-(n / 2) * B(n - 1)",
            "noting that",
        )
        .single(),
        entry(
            "I-18",
            "geometric weights with a shift",
            &ds("x^(n - j) / (k - j + r)"),
            "1 / (1 - x) * (sum(k, 1, n, x^k / (k + r)) - x^(n + 1) * Hdiff(n, r))",
            "Work with a_k=x^k",
        )
        .scalar("x", &["-1", "2", "1/2", "-3/5"])
        .scalar("r", R_SHIFTS)
        .note("H_{n+r} - H_r is encoded as Hdiff(n, r); x = 1 is excluded"),
        entry(
            "I-19",
            "geometric weights, unshifted",
            &ds("x^(n - j) / (k - j)"),
            "1 / (1 - x) * (sum(k, 1, n, x^k / k) - x^(n + 1) * H(n))",
            "Applying summation by parts",
        )
        .scalar("x", &["-1", "2", "1/2", "-3/5"]),
        entry(
            "I-20",
            "geometric weights, odd denominators",
            &ds("x^(n - j) / (2 * k - 2 * j - 1)"),
            "1 / (1 - x) * (sum(k, 1, n, x^k / (2 * k - 1)) - x^(n + 1) * O(n))",
            "Applying summation by parts",
        )
        .scalar("x", &["-1", "2", "1/2", "-3/5"]),
        entry(
            "I-21",
            "gibonacci weights with a shift",
            &ds("G(n - j, g1, g2) / (k - j + r)"),
            "G(n + 2, g1, g2) * Hdiff(n, r) - sum(k, 1, n, G(k + 1, g1, g2) / (k + r))",
            "combine according to the Binet forms",
        )
        .param(gibonacci_seeds())
        .scalar("r", R_SHIFTS),
        entry(
            "I-21a",
            "gibonacci weights, unshifted",
            &ds("G(n - j, g1, g2) / (k - j)"),
            "G(n + 2, g1, g2) * H(n) - sum(k, 1, n, G(k + 1, g1, g2) / k)",
            "combine according to the Binet forms",
        )
        .param(gibonacci_seeds()),
        entry(
            "I-21b",
            "gibonacci weights, odd denominators",
            &ds("G(n - j, g1, g2) / (2 * k - 2 * j - 1)"),
            "G(n + 2, g1, g2) * O(n) - sum(k, 1, n, G(k + 1, g1, g2) / (2 * k - 1))",
            "combine according to the Binet forms",
        )
        .param(gibonacci_seeds()),
        entry(
            "I-22",
            "alternating reciprocal double sum, split by parity",
            &ds("(-1)^j / (k - j)"),
            &parity("1 / 2 * H(floor(n / 2))", "O(floor((n + 1) / 2))"),
            "When x=-1 in",
        ),
        entry(
            "I-23",
            "geometric weights with two linear factors",
            &ds("x^(n - j) / (k - j) * (1 / (n + p - j) - x / (n + 1 + p - j))"),
            "sum(k, 1, n, x^k / (k * (k + p))) - H(n) * x^(n + 1) / (n + 1 + p)",
            "and integrate",
        )
        .scalar("x", &["-1", "2", "1/2"])
        .scalar("p", &["1", "2", "1/2", "3/2"]),
        entry(
            "I-24",
            "harmonic double sum with two shifted factors",
            &ds("1 / ((k - j) * (n + p - j) * (n + 1 + p - j))"),
            "(H(n) - Hdiff(n, p)) / p - H(n) / (n + 1 + p)",
            "Set x=1 in",
        )
        .scalar("p", &["1", "2", "3", "1/2", "-1/2"])
        .note("H_n + H_p - H_{n+p} is encoded as H(n) - Hdiff(n, p)"),
        entry(
            "I-25",
            "harmonic double sum, p = 1",
            &ds("1 / ((k - j) * (n + 1 - j) * (n + 2 - j))"),
            "n / (n + 1) - H(n) / (n + 2)",
            "Set x=1 in",
        ),
        entry(
            "I-26",
            "harmonic double sum, p = -1/2",
            &ds("1 / ((k - j) * (2 * (n - j) - 1) * (2 * (n - j) + 1))"),
            "O(n) - (n + 1) / (2 * n + 1) * H(n)",
            "Set x=1 in",
        ),
        entry(
            "I-27",
            "quadruple sum",
            "sum(m, 1, n, sum(q, 1, m - 1, sum(k, 1, q - 1, sum(j, 0, k - 1, 1 / ((k - j) * (q - j) * (q - j + 1))))))",
            "n * (n + 1) / 2 - H(n) - (n + 1) / 2 * (H(n)^2 - H(n, 2))",
            "can be derived easily",
        )
        .min_n(0)
        .max_n(12)
        .note("leading term corrected from r to r(r+1)/2, see E-27"),
        entry(
            "I-27a",
            "sum of harmonic numbers",
            "sum(m, 1, n, H(m))",
            "(n + 1) * H(n) - n",
            "can be derived easily",
        )
        .min_n(0)
        .single(),
        entry(
            "I-27b",
            "sum of squared harmonic numbers",
            "sum(m, 1, n, H(m)^2)",
            "(n + 1) * H(n)^2 - (2 * n + 1) * H(n) + 2 * n",
            "can be derived easily",
        )
        .min_n(0)
        .single(),
        entry(
            "I-27c",
            "sum of second-order harmonic numbers",
            "sum(m, 1, n, H(m, 2))",
            "(n + 1) * H(n, 2) - H(n)",
            "can be derived easily",
        )
        .min_n(0)
        .single(),
        entry(
            "I-27d",
            "triple sum behind the quadruple sum",
            "sum(q, 1, n - 1, sum(k, 1, q - 1, sum(j, 0, k - 1, 1 / ((k - j) * (q - j) * (q - j + 1)))))",
            "n - H(n) - 1 / 2 * (H(n)^2 - H(n, 2))",
            "Write n-1 for n in",
        )
        .min_n(0),
        entry(
            "I-28",
            "reciprocal product with an integer shift",
            &ds("1 / ((k - j) * (n - j + p))"),
            "1 / 2 * (H(n)^2 - H(n, 2)) - 1 / 2 * (H(p - 1)^2 + H(p - 1, 2)) \
             + H(p - 1) * (H(p + n - 1) - H(n)) + H(n) * (H(p + n) - H(n)) \
             - sum(k, 1, p - 1, H(k - 1) / (n + k))",
            "Work with a_k=1/(k+p)",
        )
        .scalar("p", &["1", "2", "3", "4"]),
        entry(
            "I-29",
            "reciprocal product, p = 1",
            &ds("1 / ((k - j) * (n + 1 - j))"),
            "1 / 2 * (H(n)^2 - H(n, 2)) + H(n) / (n + 1)",
            "Work with a_k=1/(k+p)",
        ),
        entry(
            "I-30",
            "harmonic-weighted double sum",
            &ds("H(n - j) / (k - j)"),
            "(n + 1) * H(n)^2 - (2 * n + 1) * H(n) + 2 * n",
            "come from the paper",
        ),
        entry(
            "I-31",
            "squared-harmonic-weighted double sum",
            &ds("H(n - j)^2 / (k - j)"),
            &cubes_rhs(),
            "come from the paper",
        ),
        entry(
            "I-31a",
            "sum of cubed harmonic numbers",
            "sum(k, 1, n, H(k)^3)",
            &cubes_rhs(),
            "come from the paper",
        )
        .min_n(0)
        .single(),
        entry(
            "I-32",
            "second-order-harmonic-weighted double sum",
            &ds("H(n - j, 2) / (k - j)"),
            &mixed_rhs(),
            "come from the paper",
        ),
        entry(
            "I-32a",
            "sum of H_k H_k^(2)",
            "sum(k, 1, n, H(k) * H(k, 2))",
            &mixed_rhs(),
            "come from the paper",
        )
        .min_n(0)
        .single(),
    ]
}

fn cubes_rhs() -> String {
    "(n + 1) * H(n)^3 - 3 / 2 * (2 * n + 1) * H(n)^2 + 3 * (2 * n + 1) * H(n) + 1 / 2 * H(n, 2) - 6 * n"
        .into()
}

fn mixed_rhs() -> String {
    "(n + 1) * H(n) * H(n, 2) - 1 / 2 * (2 * n + 1) * H(n, 2) + H(n) - 1 / 2 * H(n)^2".into()
}

fn gibonacci_seeds() -> ParamSpec {
    ParamSpec::joint(
        &["g1", "g2"],
        &[&["1", "1"], &["2", "1"], &["3", "-2"], &["1", "3"], &["1/2", "-2/3"]],
    )
}

/// (m, p) pairs for the Spiess entries: integer p up to m, then non-integer p.
fn spiess_pairs() -> ParamSpec {
    let mut rows: Vec<Vec<String>> = Vec::new();
    for m in 0..=3 {
        for p in 0..=m {
            rows.push(vec![m.to_string(), p.to_string()]);
        }
        for p in ["1/2", "-1/2", "7/3"] {
            rows.push(vec![m.to_string(), p.to_string()]);
        }
    }
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
    let rows: Vec<&[&str]> = rows.iter().map(Vec::as_slice).collect();
    ParamSpec::joint(&["m", "p"], &rows)
}

/// (p, q) pairs for the Pascal-sum entries.
fn pascal_pairs(extra: &[[&str; 2]]) -> ParamSpec {
    let mut rows: Vec<[String; 2]> = Vec::new();
    for p in 0..=3 {
        for q in 0..=3 {
            rows.push([p.to_string(), q.to_string()]);
        }
    }
    rows.extend(extra.iter().map(|[p, q]| [p.to_string(), q.to_string()]));
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
    let rows: Vec<&[&str]> = rows.iter().map(Vec::as_slice).collect();
    ParamSpec::joint(&["p", "q"], &rows)
}

fn binomial() -> Vec<Entry> {
    let spiess_rhs = "binom(n - p, m - p) * (sum(i, m + 1, n, 1 / (i - p)) + H(m))";
    let kb_rhs = "(1 + x)^n * H(n) - sum(k, 1, n, (1 + x)^(n - k) / k)";
    let choi_rhs = "binom(2 * n, n) * (2 * H(n) - H(2 * n))";
    let sofo_rhs = "binom(3 * n, n) * H(n) - sum(k, 1, n, 1 / k * binom(3 * n - k, n - k))";
    let dixon = "(-1)^floor(n / 2) * binom(n, floor(n / 2)) * binom(3 * floor(n / 2), n)";
    let even = "(1 + (-1)^n) / 2";
    let odd = "(1 - (-1)^n) / 2";
    let pascal_rhs = "(n + q + 1) / (p + 1) * binom(n + q, p) - binom(q, p + 1) - binom(q, p)";
    let pascal_extra = [["1/2", "1/2"], ["3/2", "-1/2"], ["-3/2", "-1/2"], ["1/3", "4/3"]];
    vec![
        entry(
            "I-33",
            "Fibonacci numbers from a binomial double sum",
            "sum(k, 1, n, sum(j, floor(n / 2), k - 1, binom(j, n - j) / (n - j)))",
            "F(n + 1) - 1",
            "Use a_k=binom(n-k,k) in Theorem",
        ),
        entry(
            "I-33a",
            "diagonal binomial sum",
            "sum(k, 0, n, binom(n - k, k))",
            "F(n + 1)",
            "Use a_k=binom(n-k,k) in Theorem",
        )
        .min_n(0)
        .single(),
        entry(
            "I-34",
            "alternating binomial double sum with harmonic tails",
            &ds("(-1)^j / (k - j) * binom(p, j) * binom(n - j, m)"),
            spiess_rhs,
            "Corollary 5",
        )
        .param(spiess_pairs())
        .constraint("m <= n")
        .note("H_{n-p} - H_{m-p} is encoded as sum(i, m + 1, n, 1 / (i - p))"),
        entry(
            "I-34a",
            "alternating binomial-harmonic single sum",
            "sum(k, 1, n, (-1)^k * binom(p, n - k) * binom(k, m) * H(k))",
            &format!("(-1)^n * {spiess_rhs}"),
            "Corollary 5",
        )
        .param(spiess_pairs())
        .constraint("m <= n")
        .max_n(40),
        entry(
            "I-35",
            "binomial-geometric double sum",
            &ds("binom(n, j) * x^(n - j) / (k - j)"),
            kb_rhs,
            "the Knuth-Boyadzhiev identity",
        )
        .scalar("x", &["1", "-1", "2", "1/2", "-2/3"]),
        entry(
            "I-35a",
            "binomial-harmonic generating polynomial",
            "sum(k, 1, n, binom(n, k) * H(k) * x^k)",
            kb_rhs,
            "the Knuth-Boyadzhiev identity",
        )
        .scalar("x", &["1", "-1", "2", "1/2", "-2/3"])
        .min_n(0)
        .max_n(40),
        entry(
            "I-36",
            "binomial double sum, x = 1",
            &ds("binom(n, j) / (k - j)"),
            "2^n * (H(n) - sum(k, 1, n, 1 / (2^k * k)))",
            "the Knuth-Boyadzhiev identity",
        ),
        entry(
            "I-37",
            "Stirling-factorial double sum",
            &ds("fact(n - j) / (k - j) * binom(n, j) * S2(m, n - j)"),
            "n^m * H(n) - sum(k, 1, n, (n - k)^m / k)",
            "differentiate m times",
        )
        .scalar("m", &["0", "1", "2", "3", "4"]),
        entry(
            "I-38",
            "squared binomial double sum",
            &ds("binom(n, j)^2 / (k - j)"),
            choi_rhs,
            "plug a_k = binom(n,k)^2",
        ),
        entry(
            "I-38a",
            "squared binomial harmonic sum",
            "sum(k, 0, n, binom(n, k)^2 * H(k))",
            choi_rhs,
            "plug a_k = binom(n,k)^2",
        )
        .min_n(0)
        .single(),
        entry(
            "I-39",
            "binomial product double sum",
            &ds("1 / (k - j) * binom(n, j) * binom(2 * n, n + j)"),
            sofo_rhs,
            "use the fact that",
        ),
        entry(
            "I-39a",
            "binomial product harmonic sum",
            "sum(k, 0, n, binom(n, k) * binom(2 * n, k) * H(k))",
            sofo_rhs,
            "use the fact that",
        )
        .min_n(0)
        .single(),
        entry(
            "I-40",
            "alternating cubed binomial double sum",
            &ds("(-1)^j / (n - j) * binom(n, j)^3"),
            &format!("{even} * ({dixon} - 1) + {odd}"),
            "use Dixon's identity",
        ),
        entry(
            "I-40a",
            "alternating sum of cubed binomials",
            "sum(k, 0, n, (-1)^k * binom(n, k)^3)",
            &format!("{even} * {dixon}"),
            "use Dixon's identity",
        )
        .min_n(0)
        .single(),
        entry(
            "I-41",
            "central binomial double sum",
            &ds("2^(2 * j) / (k - j) * binom(2 * (n - j), n - j)"),
            "2^(2 * n + 1) + (H(n) - 2) * (2 * n + 1) * binom(2 * n, n)",
            "employ the following identities from",
        ),
        entry(
            "I-41a",
            "central binomial harmonic sum",
            "sum(k, 1, n, 2^(-2 * k) * binom(2 * k, k) * H(k))",
            "2 + (H(n) - 2) * (2 * n + 1) * 2^(-2 * n) * binom(2 * n, n)",
            "employ the following identities from",
        )
        .min_n(0)
        .single(),
        entry(
            "I-41b",
            "central binomial odd harmonic sum",
            "sum(k, 1, n, 2^(-2 * k) * binom(2 * k, k) * O(k))",
            "(O(n + 1) - 1) * (2 * n + 1) * 2^(-2 * n) * binom(2 * n, n)",
            "employ the following identities from",
        )
        .min_n(0)
        .single(),
        entry(
            "I-42",
            "central binomial double sum, odd denominators",
            &ds("2^(2 * j) / (2 * k - 2 * j - 1) * binom(2 * (n - j), n - j)"),
            "(O(n + 1) - 1) * (2 * n + 1) * binom(2 * n, n)",
            "employ the following identities from",
        ),
        entry(
            "I-43",
            "two central binomial double sums with O and H weights agree",
            &ds("2^(2 * j) / (k - j) * binom(2 * (n - j), n - j) * O(n - j)"),
            &ds("2^(2 * j) / (2 * k - 2 * j - 1) * binom(2 * (n - j), n - j) * H(n - j)"),
            "This result follows from",
        ),
        entry(
            "I-44",
            "generalized binomial double sum",
            &ds("(-1)^j * s / (k - j) * binom(s, n - j)"),
            "s * binom(s - 1, n) * H(n) + binom(s - 1, n) - (-1)^n",
            "Batir derived the identity",
        )
        .scalar("s", &["1/2", "-1/2", "3/2", "1/3", "2/5", "3", "-7/3"])
        .note("s = 0 is excluded: the derivation divides by s"),
        entry(
            "I-44a",
            "generalized binomial harmonic sum",
            "sum(k, 1, n, binom(s, k) * (-1)^k * s * H(k))",
            "s * (-1)^n * binom(s - 1, n) * H(n) + (-1)^n * binom(s - 1, n) - 1",
            "Using the transformation s ↦ s-n",
        )
        .scalar("s", &["1/2", "-1/2", "3/2", "1/3", "2/5", "3", "-7/3"])
        .min_n(0)
        .max_n(40)
        .note("the constant term is -1, not -1/s"),
        entry(
            "I-45",
            "central binomial double sum with odd weights",
            &ds("1 / (k - j) * 2^(2 * j) / (2 * (n - j) - 1) * binom(2 * (n - j), n - j)"),
            "2^(2 * n + 1) - binom(2 * n, n) * (H(n) + 2)",
            "Using the transformation s ↦ s-n",
        ),
        entry(
            "I-46",
            "central binomial double sum from s = 1/2",
            &ds("2^(2 * j) / (k - j) * binom(2 * (n - j), n - j)"),
            "2^(2 * n + 1) + (2 * n + 1) * binom(2 * n, n) * (H(n) - 2)",
            "keep in mind that",
        ),
        entry(
            "I-46a",
            "binomial coefficient with top 1/2",
            "binom(1 / 2, n)",
            "(-1)^(n + 1) * 2^(-2 * n) / (2 * n - 1) * binom(2 * n, n)",
            "keep in mind that",
        )
        .min_n(0)
        .single(),
        entry(
            "I-46b",
            "binomial coefficient with top -1/2",
            "binom(-1 / 2, n)",
            "(-1)^n * 2^(-2 * n) * binom(2 * n, n)",
            "keep in mind that",
        )
        .min_n(0)
        .single(),
        entry(
            "I-46c",
            "binomial coefficient with top -3/2",
            "binom(-3 / 2, n)",
            "(-1)^n * (2 * n + 1) * 2^(-2 * n) * binom(2 * n, n)",
            "keep in mind that",
        )
        .min_n(0)
        .single(),
        entry(
            "I-47",
            "inverse binomial double sum",
            &ds("(-1)^j / (k - j) / binom(n, j)"),
            "(n + 1) * (H(n + 1) / (n + 2) - ((-1)^n + 1) / (n + 2)^2)",
            "together with the following identity",
        ),
        entry(
            "I-48",
            "sum of binomials along the top",
            "sum(k, 1, n, binom(k + q, p))",
            pascal_rhs,
            "is a consequence of Pascal's formula",
        )
        .param(pascal_pairs(&pascal_extra))
        .min_n(0)
        .single(),
        entry(
            "I-49",
            "binomial-harmonic sum along the top",
            "sum(k, 1, n, binom(k + q, p) * H(k + q))",
            "binom(n + q, p) * (1 / (p + 1) + (n + q + 1) / (p + 1) * (H(n + q) - 1 / (p + 1))) \
             - binom(q, p + 1) * (H(q) - 1 / (p + 1)) - binom(q, p) * H(q)",
            "eliminating H_{q-p-1} between the two",
        )
        .param(pascal_pairs(&[]))
        .min_n(0)
        .single()
        .note("integer q only, so that H_q is rational"),
        entry(
            "I-50",
            "binomial double sum with 1/(n - j)",
            &ds("1 / (n - j) * binom(n - j + q, p)"),
            pascal_rhs,
            "Set a_k=binom(k+q,p)",
        )
        .param(pascal_pairs(&pascal_extra)),
        entry(
            "I-51",
            "binomial double sum with shift q",
            &ds("binom(n - j + q, p) / (k - j + q)"),
            "binom(n + q, p) * (1 / (p + 1) + (n + q + 1) / (p + 1) * (Hdiff(n, q) - 1 / (p + 1))) \
             + binom(q, p + 1) / (p + 1)",
            "Set a_k=binom(k+q,p)",
        )
        .param(pascal_pairs(&[
            ["-3/2", "-1/2"],
            ["-5/2", "-1/2"],
            ["-7/2", "-1/2"],
            ["1/2", "1/2"],
            ["1/3", "4/3"],
        ]))
        .note("H_{n+q} - H_q is encoded as Hdiff(n, q)"),
        entry(
            "I-52",
            "Catalan double sum with odd denominators",
            &ds("2^(2 * j) / binom(n - j + r, r - 1) * Cat(n - j) / (2 * k - 2 * j - 1)"),
            "-1 / binom(n + r, r - 1) * Cat(n) / (2 * r - 1) * (1 + (2 * n + 1) * (O(n) + 1 / (2 * r - 1))) \
             + 2^(2 * n + 1) / (2 * r - 1)^2",
            "set q=-1/2 and p=-r-1/2",
        )
        .scalar("r", &["1", "2", "3", "3/2", "5/2", "1/3"]),
        entry(
            "I-52a",
            "half-integer binomial through Catalan numbers",
            "binom(n - 1 / 2, n + r)",
            "(-1)^r * r * binom(2 * r, r) * Cat(n) / 2^(2 * n + 2 * r) / binom(n + r, n + 1)",
            "expressed in terms of the Gamma function",
        )
        .scalar("r", &["1", "2", "3", "4"])
        .min_n(0)
        .single(),
        entry(
            "I-53",
            "Catalan double sum, r = 1",
            &ds("2^(2 * j) * Cat(n - j) / (2 * k - 2 * j - 1)"),
            "-Cat(n) * (1 + (2 * n + 1) * (O(n) + 1)) + 2^(2 * n + 1)",
            "set q=-1/2 and p=-r-1/2",
        ),
        entry(
            "I-54",
            "alternating binomial sum at integer r",
            "sum(k, 0, n, (-1)^k * binom(n, k) * binom(k, k + r))",
            "0",
            "Section 13",
        )
        .scalar("r", &["0", "1", "2", "3"])
        .single()
        .note("integer r only: sin(pi r) = 0, and r = 0 needs n >= 1"),
        entry(
            "I-55",
            "alternating binomial-harmonic sum at integer r",
            "sum(k, 0, n, (-1)^k * binom(n, k) * binom(k, k + r) * H(k + r))",
            "-binom(0, r) / n",
            "Section 13",
        )
        .scalar("r", &["0", "1", "2", "3"])
        .single()
        .note("integer r only; binom(0, r) selects the r = 0 branch"),
        entry(
            "I-56",
            "alternating binomial double sum, r = 0",
            &ds("(-1)^j / (k - j) * binom(n, j)"),
            "(-1)^(n + 1) / n",
            "and simplify using",
        )
        .note("r = 0 only; other rational r need sin(pi r) and are not verified"),
        entry(
            "I-57",
            "half-integer binomial double sum, rationalized",
            &ds("(-1)^j / (2 * (k - j) + 1) * binom(2 * n + 1, 2 * j) * binom(2 * j, j) / binom(n, j) * 2^(-2 * j)"),
            "(-1)^(n + 1) * n * (n + 1) / (2 * n + 1)^2 * 2^(-2 * n) * binom(2 * (n + 1), n + 1)",
            "and simplify using",
        ),
        entry(
            "I-57a",
            "binomial coefficient with top n + 1/2",
            "binom(n + 1 / 2, i)",
            "binom(2 * n + 1, 2 * i) * binom(2 * i, i) / binom(n, i) * 2^(-2 * i)",
            "and simplify using",
        )
        .scalar("i", &["0", "1", "2", "3", "5", "8"])
        .constraint("i <= n")
        .min_n(0)
        .single(),
    ]
}

fn transforms() -> Vec<Entry> {
    let lz = |s: &str| ds(&format!("(-1)^j / (n - j + 1) * binom(n, j) * {s}"));
    let corrected = "binom(k, j) replaced by binom(n - j, k - j) (with the sign (-1)^(k-j) inside); \
                     the printed form fails from n = 2";
    vec![
        entry(
            "I-58",
            "double sum over a binomial transform pair",
            &ds("binom(n - j, k - j) * (-1)^(k - j) * a(n - j) * s(k - j)"),
            "sum(k, 1, n, a(k) * sigma(k)) - s(0) * sum(k, 1, n, a(k))",
            "and apply it to",
        )
        .seq("a")
        .seq("s")
        .param(ParamSpec::transform_of("sigma", "s"))
        .note(corrected),
        entry(
            "I-59",
            "Fibonacci transform pair double sum",
            &ds("binom(n - j, k - j) * a(n - j) * F(k - j)"),
            "sum(k, 1, n, a(k) * F(2 * k))",
            "in turn to the binomial transform pairs",
        )
        .seq("a")
        .note(corrected),
        entry(
            "I-59a",
            "Fibonacci binomial transform pair",
            "sum(k, 0, n, binom(n, k) * F(k))",
            "F(2 * n)",
            "in turn to the binomial transform pairs",
        )
        .min_n(0)
        .single(),
        entry(
            "I-60",
            "Lucas transform pair double sum",
            &ds("binom(n - j, k - j) * a(n - j) * L(k - j)"),
            "sum(k, 1, n, a(k) * (L(2 * k) - 2))",
            "in turn to the binomial transform pairs",
        )
        .seq("a")
        .note(corrected),
        entry(
            "I-60a",
            "Lucas binomial transform pair",
            "sum(k, 0, n, binom(n, k) * L(k))",
            "L(2 * n)",
            "in turn to the binomial transform pairs",
        )
        .min_n(0)
        .single(),
        entry(
            "I-61",
            "Bernoulli transform pair double sum",
            &ds("binom(n - j, k - j) * a(n - j) * B(k - j)"),
            "sum(k, 1, n, a(k) * ((-1)^k * B(k) - 1))",
            "to the binomial transform pair",
        )
        .seq("a")
        .note(corrected),
        entry(
            "I-61a",
            "Bernoulli numbers are self-paired",
            "sum(k, 0, n, binom(n, k) * B(k))",
            "(-1)^n * B(n)",
            "to the binomial transform pair",
        )
        .min_n(0)
        .single(),
        entry(
            "I-62",
            "transform pair double sum with two offsets",
            &lz("sum(p, 0, r, (-1)^p * binom(r, p) * s(k + p + m - j))"),
            "(-1)^n / (n + 1) * sum(p, 0, m, (-1)^p * binom(m, p) * (sigma(n + p + r) - sigma(p + r)))",
            "Theorems 6.3 and 7.9",
        )
        .param(ParamSpec::random_sequence("s", 4))
        .param(ParamSpec::transform_of("sigma", "s"))
        .param(ParamSpec::joint(
            &["m", "r"],
            &[
                &["0", "0"],
                &["0", "1"],
                &["0", "2"],
                &["1", "0"],
                &["1", "1"],
                &["1", "2"],
                &["2", "0"],
                &["2", "1"],
                &["2", "2"],
            ],
        )),
        entry(
            "I-63",
            "transform pair double sum, m = 0",
            &lz("sum(p, 0, r, (-1)^p * binom(r, p) * s(k + p - j))"),
            "(-1)^n / (n + 1) * (sigma(n + r) - sigma(r))",
            "Theorems 6.3 and 7.9",
        )
        .param(ParamSpec::random_sequence("s", 3))
        .param(ParamSpec::transform_of("sigma", "s"))
        .scalar("r", &["0", "1", "2", "3"]),
        entry(
            "I-64",
            "transform pair double sum, r = 0",
            &lz("s(k + m - j)"),
            "(-1)^n / (n + 1) * sum(p, 0, m, (-1)^p * binom(m, p) * (sigma(n + p) - sigma(p)))",
            "Theorems 6.3 and 7.9",
        )
        .param(ParamSpec::random_sequence("s", 3))
        .param(ParamSpec::transform_of("sigma", "s"))
        .scalar("m", &["0", "1", "2", "3"]),
        entry(
            "I-65",
            "transform pair double sum, no offsets",
            &lz("s(k - j)"),
            "(-1)^n / (n + 1) * (sigma(n) - sigma(0))",
            "Theorems 6.3 and 7.9",
        )
        .seq("s")
        .param(ParamSpec::transform_of("sigma", "s")),
        entry(
            "I-66",
            "harmonic-geometric transform double sum",
            &lz("x^(k - j) * H(k - j)"),
            "(-1)^n / (n + 1) * ((1 - x)^n * H(n) - sum(k, 1, n, (1 - x)^(n - k) / k))",
            "which follows from the Knuth-Boyadzhiev identity",
        )
        .scalar("x", &["0", "1", "-1", "2", "1/2"]),
        entry(
            "I-66a",
            "harmonic-geometric binomial transform pair",
            "sum(k, 0, n, binom(n, k) * (-1)^k * x^k * H(k))",
            "(1 - x)^n * H(n) - sum(k, 1, n, (1 - x)^(n - k) / k)",
            "which follows from the Knuth-Boyadzhiev identity",
        )
        .scalar("x", &["0", "1", "-1", "2", "1/2"])
        .min_n(0)
        .max_n(40),
        entry(
            "I-67",
            "harmonic transform double sum, x = 1",
            &lz("H(k - j)"),
            "(-1)^(n + 1) / (n * (n + 1))",
            "which follows from the Knuth-Boyadzhiev identity",
        ),
        entry(
            "I-68",
            "power-harmonic transform double sum",
            "sum(k, 1, n, sum(j, 0, k, (-1)^j / (n - j + 1) * binom(n, j) * (k - j)^r * H(k - j)))",
            "(-1)^(n + 1) / (n + 1) * sum(k, 0, r, (-1)^k * fact(k) / (n - k) * S2(r, k))",
            "proceed as in the proof of Proposition",
        )
        .scalar("r", &["0", "1", "2", "3", "4", "5"])
        .constraint("r < n")
        .note("the inner sum runs to j = k"),
        entry(
            "I-69",
            "Catalan transform double sum with H - O weights",
            &ds("(-1)^j * 2^(2 * j - 2 * k) * (2 * (k - j) + 1) / ((n - j + 1) * (k - j + 1)) \
                 * binom(n, j) * Cat(k - j) * (H(k - j + 1) - O(k - j + 1))"),
            "(-1)^(n + 1) * 2^(-2 * n) * (2 * n + 1) / (n + 1)^2 * Cat(n) * (H(n + 1) - O(n + 1))",
            "Use the following known result",
        ),
        entry(
            "I-69a",
            "Catalan H - O binomial transform",
            "sum(k, 0, n, (-1)^k * binom(n, k) * 2^(-2 * k) * (2 * k + 1) / (k + 1) * Cat(k) * (H(k + 1) - O(k + 1)))",
            "-2^(-2 * n) * (2 * n + 1) / (n + 1) * Cat(n) * (H(n + 1) - O(n + 1))",
            "Use the following known result",
        )
        .min_n(0)
        .single(),
        entry(
            "I-70",
            "Bernoulli transform double sum",
            "sum(k, 1, n, (-1)^k * sum(j, 0, k - 1, B(k - j + 1) / ((k - j + 1) * (n - j + 1)) * binom(n, j)))",
            "(-1)^n / (n + 1)^2 * ((-1)^(n + 1) * B(n + 1) + (n - 1) / 2)",
            "Prop. 13.33",
        ),
        entry(
            "I-70a",
            "binomial sum of B_{k+1}/(k+1)",
            "sum(k, 0, n, binom(n, k) * B(k + 1) / (k + 1))",
            "(-1)^(n + 1) * B(n + 1) / (n + 1) - 1 / (n + 1)",
            "Prop. 13.33",
        )
        .min_n(0)
        .single(),
        entry(
            "I-71",
            "central binomial transform double sum",
            &lz("binom(2 * (k - j), k - j)"),
            "1 / (n + 1) * (sum(k, 0, floor(n / 2), binom(n, k) * binom(n - k, k)) - (-1)^n)",
            "It is known that",
        ),
        entry(
            "I-71a",
            "alternating central binomial transform",
            "sum(k, 0, n, (-1)^k * binom(n, k) * binom(2 * k, k))",
            "(-1)^n * sum(k, 0, floor(n / 2), binom(n, k) * binom(n - k, k))",
            "It is known that",
        )
        .min_n(0)
        .single(),
        entry(
            "I-72",
            "Catalan transform double sum",
            &lz("Cat(k - j + 1)"),
            "1 / (n + 1) * (sum(k, 0, floor(n / 2), binom(n, 2 * k) * Cat(k)) - (-1)^n)",
            "Use the result",
        ),
        entry(
            "I-72a",
            "alternating Catalan transform",
            "sum(k, 0, n, (-1)^k * binom(n, k) * Cat(k + 1))",
            "(-1)^n * sum(k, 0, floor(n / 2), binom(n, 2 * k) * Cat(k))",
            "Use the result",
        )
        .min_n(0)
        .single(),
    ]
}

/// Identities exactly as printed where the printed form is wrong. Each one
/// is expected to fail; the corrected forms live in [`builtin_catalog`].
pub fn errata_catalog() -> Vec<IdentityRecord> {
    vec![
        entry(
            "E-08",
            "alternating reciprocals as printed",
            &ds("(-1)^(k - j + 1) / (n - j)"),
            "O(floor((n - 1) / 2))",
            "Use a_k=1/k in Theorem",
        )
        .note("corrected as I-08"),
        entry(
            "E-27",
            "quadruple sum as printed",
            "sum(m, 1, n, sum(q, 1, m - 1, sum(k, 1, q - 1, sum(j, 0, k - 1, 1 / ((k - j) * (q - j) * (q - j + 1))))))",
            "n - H(n) - (n + 1) / 2 * (H(n)^2 - H(n, 2))",
            "can be derived easily",
        )
        .min_n(0)
        .max_n(12)
        .note("corrected as I-27"),
        entry(
            "E-58",
            "transform pair double sum as printed",
            "sum(k, 1, n, (-1)^k * sum(j, 0, k - 1, (-1)^j * binom(k, j) * a(n - j) * s(k - j)))",
            "sum(k, 1, n, a(k) * sigma(k)) - s(0) * sum(k, 1, n, a(k))",
            "and apply it to",
        )
        .seq("a")
        .seq("s")
        .param(ParamSpec::transform_of("sigma", "s"))
        .note("corrected as I-58"),
        entry(
            "E-59",
            "Fibonacci transform pair double sum as printed",
            &ds("binom(k, j) * a(n - j) * F(k - j)"),
            "sum(k, 1, n, a(k) * F(2 * k))",
            "in turn to the binomial transform pairs",
        )
        .seq("a")
        .note("corrected as I-59"),
        entry(
            "E-60",
            "Lucas transform pair double sum as printed",
            &ds("binom(k, j) * a(n - j) * L(k - j)"),
            "sum(k, 1, n, a(k) * (L(2 * k) - 2))",
            "in turn to the binomial transform pairs",
        )
        .seq("a")
        .note("corrected as I-60"),
        entry(
            "E-61",
            "Bernoulli transform pair double sum as printed",
            &ds("binom(k, j) * a(n - j) * B(k - j)"),
            "sum(k, 1, n, a(k) * ((-1)^k * B(k) - 1))",
            "to the binomial transform pair",
        )
        .seq("a")
        .note("corrected as I-61"),
    ]
    .into_iter()
    .map(|e| e.0)
    .collect()
}
