use depin_sim::agents::NodeProvider;
use depin_sim::llm_gateway::{parse_yes_no, ParsedVerdict, Verdict};
use depin_sim::market::{diluted_market_cap, global_revenue, market_cap, token_price, user_count, RevenueParams};
use depin_sim::metrics::stability;
use depin_sim::tokenomics::{circulating_supply, TokenAllocation};
use proptest::prelude::*;

fn exit_month(signals: &[bool], patience: u32) -> Option<usize> {
    let mut node = NodeProvider::new(0, 1.0, 0.5, patience, 0).unwrap();
    signals
        .iter()
        .position(|&s| node.observe_exit_signal(Verdict::from_bool(s)).unwrap())
}

proptest! {
    #[test]
    fn exits_come_no_earlier_with_more_patience(signals in prop::collection::vec(any::<bool>(), 0..120), k in 1u32..8) {
        let horizon = signals.len();
        let a = exit_month(&signals, k).unwrap_or(horizon);
        let b = exit_month(&signals, k + 1).unwrap_or(horizon);
        prop_assert!(b >= a);
    }

    #[test]
    fn stability_ignores_price_scale(
        prices in prop::collection::vec(0.01f64..1e4, 3..60),
        scale in 1e-3f64..1e3,
    ) {
        let base = stability(&prices).unwrap();
        let scaled: Vec<f64> = prices.iter().map(|p| p * scale).collect();
        let s = stability(&scaled).unwrap();
        prop_assert!((s - base).abs() <= 1e-9 * base.max(1.0), "{s} vs {base}");
        prop_assert!(base >= 0.0);
    }

    #[test]
    fn user_count_is_monotone_and_exact(n in 0u64..1_000_000) {
        prop_assert!(user_count(n + 1) >= user_count(n));
        let pairs = (n as f64) * (n.saturating_sub(1) as f64) / 2.0;
        let u = user_count(n);
        prop_assert!((u * u - 1e4 * pairs).abs() <= 1e-9 * (1e4 * pairs).max(1.0));
    }

    #[test]
    fn revenue_is_additive(
        price in 0.0f64..100.0,
        emission in 0.0f64..1e7,
        nodes in 1u64..5_000,
        users in 0.0f64..1e7,
    ) {
        let p = RevenueParams::default();
        let full = global_revenue(price, emission, nodes, users, &p);
        let split = global_revenue(price, emission, nodes, 0.0, &p) + global_revenue(0.0, emission, nodes, users, &p);
        prop_assert!((full - split).abs() <= 1e-9 * full.abs().max(1.0));
    }

    #[test]
    fn price_round_trips_through_supply(endowment in 0.0f64..1e12, sale in 1e-3f64..1e12) {
        let p = token_price(endowment, sale).unwrap();
        prop_assert!((p * sale - endowment).abs() <= 1e-9 * endowment.max(1.0));
    }

    #[test]
    fn market_cap_never_exceeds_diluted(price in 0.0f64..1e4, month in 1u32..400) {
        let alloc = TokenAllocation::default();
        let circ = circulating_supply(month, &alloc);
        prop_assert!(circ <= alloc.total_supply);
        prop_assert!(market_cap(price, circ) <= diluted_market_cap(price, alloc.total_supply));
    }

    #[test]
    fn embedded_words_never_parse(prefix in "[a-z]{1,4}", suffix in "[a-z]{1,4}", word in "(yes|no|YES|No)") {
        prop_assert_eq!(parse_yes_no(&format!("{prefix}{word}")), ParsedVerdict::ParseFailure);
        prop_assert_eq!(parse_yes_no(&format!("{word}{suffix}")), ParsedVerdict::ParseFailure);
    }

    #[test]
    fn standalone_words_always_parse(pad in "[ .,!?'\"()\n]{0,3}", word in "(yes|no|Yes|NO)") {
        let expected = Verdict::from_bool(word.eq_ignore_ascii_case("yes"));
        prop_assert_eq!(parse_yes_no(&format!("{pad}{word}{pad}")), ParsedVerdict::Answer(expected));
    }

    #[test]
    fn parser_accepts_arbitrary_text(text in ".{0,64}") {
        let _ = parse_yes_no(&text);
    }
}
