//! Small hand-made instances used throughout the tests and docs.

/// Six articles; `v2..v6` owned and merged into `{v2,v3}`, `{v4,v5}`, `{v6}`.
pub const SIX_ARTICLES: &str = "\
# six-article example profile
problem atomizing
variant plain
measure fusion
h 2
article v1
article v2
article v3
article v4
article v5
article v6
own v2
own v3
own v4
own v5
own v6
cite v1 v4
cite v1 v5
cite v2 v6
cite v3 v6
cite v4 v5
part v2 v3
part v4 v5
";

/// One merged article `{r1,r2,r3,r4}` cited by four outside articles.
pub const FOUR_CITERS: &str = "\
# one merged article with four versions
problem extracting
variant plain
measure union
h 2
article l1
article l2
article l3
article l4
article r1
article r2
article r3
article r4
own r1
own r2
own r3
own r4
cite l1 r1
cite l1 r2
cite l2 r3
cite l3 r4
cite l4 r4
part r1 r2 r3 r4
";
