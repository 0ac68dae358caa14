use std::collections::HashSet;

use gdwn::{canonical, is_option, options, GameSpec, Position};
use proptest::prelude::*;

fn specs() -> impl Strategy<Value = GameSpec> {
    prop_oneof![
        Just(GameSpec::Nim),
        Just(GameSpec::Wythoff),
        Just(GameSpec::gdwn(1, 2).unwrap()),
        Just(GameSpec::gdwn(2, 3).unwrap()),
        (1u64..6, 2u64..9)
            .prop_filter("p < q, coprime", |&(p, q)| p < q && num_integer::gcd(p, q) == 1)
            .prop_map(|(p, q)| GameSpec::gdwn(p, q).unwrap()),
    ]
}

fn pos(limit: u64) -> impl Strategy<Value = Position> {
    (0..=limit, 0..=limit).prop_map(|(x, y)| Position::new(x, y))
}

/// Move rule read straight off the game definitions.
fn legal(spec: GameSpec, dx: u64, dy: u64) -> bool {
    if dx == 0 && dy == 0 {
        return false;
    }
    let nim = dx == 0 || dy == 0;
    match spec {
        GameSpec::Nim => nim,
        GameSpec::Wythoff => nim || dx == dy,
        GameSpec::Gdwn(_) => {
            let (p, q) = spec.slope().unwrap();
            nim || dx == dy || (dx * q == dy * p && dx % p == 0) || (dx * p == dy * q && dx % q == 0)
        }
    }
}

proptest! {
    #[test]
    fn is_option_symmetric(spec in specs(), u in pos(200), v in pos(200)) {
        prop_assert_eq!(is_option(spec, u, v), is_option(spec, u.reflect(), v.reflect()));
    }

    #[test]
    fn options_shrink_coordinate_sum(spec in specs(), u in pos(120)) {
        for o in options(spec, u) {
            prop_assert!(o.x + o.y < u.x + u.y);
        }
    }

    #[test]
    fn option_sets_nest(u in pos(80), (p, q) in (1u64..5, 2u64..8).prop_filter("ok", |&(p, q)| p < q && num_integer::gcd(p, q) == 1)) {
        let nim: HashSet<_> = options(GameSpec::Nim, u).collect();
        let wythoff: HashSet<_> = options(GameSpec::Wythoff, u).collect();
        let gdwn: HashSet<_> = options(GameSpec::gdwn(p, q).unwrap(), u).collect();
        prop_assert!(nim.is_subset(&wythoff));
        prop_assert!(wythoff.is_subset(&gdwn));
    }

    #[test]
    fn options_match_definition(spec in specs(), u in pos(40)) {
        let listed: Vec<_> = options(spec, u).collect();
        let set: HashSet<_> = listed.iter().copied().collect();
        prop_assert_eq!(set.len(), listed.len(), "duplicate option");
        for x in 0..=u.x {
            for y in 0..=u.y {
                let v = Position::new(x, y);
                let expected = legal(spec, u.x - x, u.y - y);
                prop_assert_eq!(set.contains(&v), expected, "{} -> {}", u, v);
                prop_assert_eq!(is_option(spec, u, v), expected);
            }
        }
    }

    #[test]
    fn canonical_orders_and_is_idempotent(u in pos(u64::MAX)) {
        let c = canonical(u);
        prop_assert!(c.x <= c.y);
        prop_assert_eq!(canonical(c), c);
        prop_assert_eq!(canonical(u.reflect()), c);
    }

    #[test]
    fn few_slopes_per_column(spec in specs(), dx in 1u64..500) {
        let dys: HashSet<u64> = (0..=20 * dx).filter(|&dy| dy != 0 && legal(spec, dx, dy)).collect();
        prop_assert!(dys.len() < 4, "{:?}", dys);
        for &dy in &dys {
            prop_assert!(spec.admits(gdwn::Move::new(dx, dy)));
        }
    }
}

#[test]
fn spec_text_round_trips() {
    for s in ["nim", "wythoff", "gdwn:1,2", "gdwn:2,3", "gdwn:3,7"] {
        let spec: GameSpec = s.parse().unwrap();
        assert_eq!(spec.to_string(), s);
    }
    for bad in ["gdwn:2,4", "gdwn:3,2", "gdwn:1", "gdwn:0,1", "chess", "gdwn:a,b"] {
        assert!(bad.parse::<GameSpec>().is_err(), "{bad}");
    }
}
