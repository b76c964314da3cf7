use mingenus::literal::{class_to_string, parse_class, parse_twisted, parse_word, twisted_to_value, word_to_value};
use mingenus_core::twisted::{TwistedClass, TwistedContext};
use mingenus_core::{BigInt, ClassH2, GenusContext, GeneratorMove, MoveKind, MoveWord};
use proptest::prelude::*;

fn class_strategy() -> impl Strategy<Value = ClassH2> {
    (1usize..=4).prop_flat_map(|g| {
        prop::collection::vec(any::<i128>(), 4 * g + 2).prop_map(move |xs| {
            let coords: Vec<BigInt> = xs.into_iter().map(BigInt::from).collect();
            ClassH2::from_coords(GenusContext::new(g).unwrap(), coords).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn class_literal_round_trips(sigma in class_strategy()) {
        let text = class_to_string(&sigma);
        prop_assert_eq!(parse_class(&text).unwrap(), sigma);
    }

    #[test]
    fn twisted_literal_round_trips(
        g in 1usize..=3,
        m in prop::sample::select(vec![2i64, 3, 5, -7, 11]),
        xs in prop::collection::vec(-1000i64..=1000, 12),
        fiber in any::<i64>(),
    ) {
        let c = TwistedContext::new(g, m).unwrap();
        let sigma = TwistedClass::from_i64s(c, &xs[..4 * g], fiber).unwrap();
        let text = twisted_to_value(&sigma).to_string();
        prop_assert_eq!(parse_twisted(&text).unwrap(), sigma);
    }

    #[test]
    fn word_literal_round_trips(picks in prop::collection::vec((0usize..64, -5i64..=5), 0..8)) {
        let ctx = GenusContext::new(2).unwrap();
        let kinds = MoveKind::all(ctx);
        let mut word = MoveWord::new();
        for (k, p) in picks {
            if p != 0 {
                word.push(GeneratorMove::with_exponent(kinds[k % kinds.len()].clone(), p).unwrap());
            }
        }
        let text = word_to_value(&word).to_string();
        prop_assert_eq!(parse_word(&text).unwrap(), word);
    }
}
