//! Prints the Baker-Campbell-Hausdorff series in the Lyndon basis.

use kmprop::bch::BchSeries;
use kmprop::field::PrimeField;

fn bracketing(word: &[u8], series: &BchSeries) -> String {
    let i = series.basis.index_of(word).expect("Lyndon word");
    match series.basis.factors[i] {
        None => if word[0] == 0 { "X" } else { "Y" }.to_string(),
        Some((a, b)) => format!(
            "[{},{}]",
            bracketing(&series.basis.words[a], series),
            bracketing(&series.basis.words[b], series)
        ),
    }
}

fn main() -> kmprop::Result<()> {
    let series = BchSeries::new(5);
    for (w, c) in series.basis.words.iter().zip(&series.coefficients) {
        if *c != num_traits::Zero::zero() {
            println!("{c:>8}  {}", bracketing(w, &series));
        }
    }
    let mod7 = series.reduce(&PrimeField::new(7)?)?;
    println!("mod 7: {mod7:?}");
    println!("mod 5: {:?}", series.reduce(&PrimeField::new(5)?).err());
    Ok(())
}
