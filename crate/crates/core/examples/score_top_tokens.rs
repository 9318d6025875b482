//! Scoring real tokens: market caps of the ten largest DePIN tokens (May
//! 2024) from price and circulating supply, and stability of a price series
//! read from CSV.

use depin_sim::io::read_price_series;
use depin_sim::metrics::{efficiency, stability};

const TOKENS: [(&str, f64, f64); 10] = [
    ("Internet Computer (ICP)", 12.13, 5_631_971_226.0),
    ("Render (RNDR)", 10.24, 3_980_572_572.0),
    ("Filecoin (FIL)", 5.94, 3_310_041_671.0),
    ("Bittensor (TAO)", 416.51, 2_850_998_994.0),
    ("Arweave (AR)", 37.98, 2_486_050_282.0),
    ("Theta Network (THETA)", 2.27, 2_274_255_874.0),
    ("Akash Network (AKT)", 5.23, 1_247_039_844.0),
    ("BitTorrent (BTT)", 1.19e-6, 1_152_552_225.0),
    ("MultiversX (EGLD)", 39.96, 1_078_774_444.0),
    ("AIOZ Network (AIOZ)", 0.7824, 858_001_031.0),
];

// daily closes, made up for the demo
const CLOSES: &str = "date,close\n\
2024-05-20,11.42\n2024-05-21,11.90\n2024-05-22,12.31\n2024-05-23,11.87\n\
2024-05-24,12.05\n2024-05-25,12.40\n2024-05-26,12.22\n2024-05-27,12.31\n2024-05-28,12.13\n";

fn main() -> depin_sim::Result<()> {
    println!("{:<24} {:>12} {:>20} {:>16}", "token", "price", "circulating", "efficiency");
    for (name, price, cap) in TOKENS {
        let supply = (cap / price).round();
        println!("{name:<24} {price:>12} {supply:>20.0} {:>16.0}", efficiency(supply, price));
    }

    let series = read_price_series(CLOSES, Some("close"))?;
    println!(
        "\nstability of {} daily closes: {:.5}",
        series.prices.len(),
        stability(&series.prices)?
    );
    Ok(())
}
