use qpart::classes::{classify_transition, durfee_dissection, member};
use qpart::ideal::{block_decompose, generator_divides, greedy_blocks, in_basis, BlockDecomposition};
use qpart::{partitions, BlockKind, ClassId, ClassKind, Partition};

fn id(kind: ClassKind, r: u32, i: u32) -> ClassId {
    ClassId::new(kind, r, i).unwrap()
}

#[test]
fn quotient_basis_is_the_new_part_class() {
    for n in 0..=22 {
        for lam in partitions(n) {
            for r in 2..=4 {
                for i in 1..=r {
                    let basis = in_basis(&lam, r, i).unwrap();
                    assert_eq!(basis, member(id(ClassKind::C, r, i), &lam), "{lam} r={r} i={i}");
                    assert_eq!(basis, member(id(ClassKind::D, r, i), &lam), "{lam} r={r} i={i}");
                }
            }
        }
    }
}

#[test]
fn ones_power_divides() {
    for r in 2..=5 {
        for i in 1..=r {
            let lam = Partition::from_multiset(vec![1; i as usize]);
            assert!(generator_divides(&lam, r, i).unwrap());
        }
    }
    assert!(in_basis(&Partition::empty(), 3, 1).unwrap());
}

/// Durfee rectangles with a positive row count, and non-empty squares.
fn shape(lam: &Partition, r: u32, i: u32) -> (usize, usize) {
    let d = durfee_dissection(lam, r, i);
    let rects = d.blocks.iter().filter(|b| b.kind == BlockKind::HorizontalRect && b.rows > 0).count();
    let squares = d.blocks.iter().filter(|b| b.kind == BlockKind::Square && !b.empty).count();
    (rects, squares)
}

fn check_star(lam: &Partition, r: u32, i: u32, dec: &BlockDecomposition) {
    let first = &durfee_dissection(lam, r, i).blocks[0];
    let top = first.rows;
    let f_prev = dec.f[r as usize - 2] as usize;
    assert!(dec.ell < top && top <= f_prev + dec.ell, "{lam} r={r} i={i} {dec:?}");
}

#[test]
fn transitions_decompose_into_blocks() {
    let mut seen = 0;
    for n in 1..=25 {
        for lam in partitions(n) {
            for r in 2..=5 {
                for i in 1..=r {
                    let t = classify_transition(&lam, r, i).unwrap();
                    let dec = block_decompose(&lam, r, i);
                    if !t.is_transition() {
                        assert!(dec.is_err(), "{lam} r={r} i={i}");
                        continue;
                    }
                    let dec = dec.unwrap();
                    seen += 1;
                    assert_eq!(dec.partition(), lam);
                    assert_eq!(dec.blocks.len(), r as usize);
                    assert!(dec.ell < *dec.f.last().unwrap() as usize);
                    assert_eq!(dec.blocks.last().unwrap().len(), dec.ell);
                    for (j, b) in dec.blocks[..r as usize - 1].iter().enumerate() {
                        assert_eq!(b.len(), dec.f[j] as usize, "{lam} r={r} i={i}");
                    }
                    let flat = dec.blocks.concat();
                    assert!(flat.windows(2).all(|w| w[0] <= w[1]));
                    check_star(&lam, r, i, &dec);
                    assert_eq!(greedy_blocks(&lam, r, i).unwrap(), Some(dec), "{lam} r={r} i={i}");
                }
            }
        }
    }
    assert!(seen > 10_000);
}

#[test]
fn partial_block_forms_land_in_the_durfee_class() {
    for n in 1..=25 {
        for lam in partitions(n) {
            for r in 2..=5 {
                for i in 1..=r {
                    if greedy_blocks(&lam, r, i).unwrap().is_none() {
                        continue;
                    }
                    assert!(member(id(ClassKind::D, r, i), &lam), "{lam} r={r} i={i}");
                    assert_eq!(shape(&lam, r, i), ((r - i) as usize, (i - 1) as usize), "{lam} r={r} i={i}");
                }
            }
        }
    }
}

#[test]
fn unit_parts_decompose_into_unit_blocks() {
    for r in 2..=6u32 {
        let lam = Partition::from_multiset(vec![1; r as usize - 1]);
        let dec = block_decompose(&lam, r, r).unwrap();
        assert_eq!(dec.f, vec![1; r as usize]);
        assert_eq!(dec.ell, 0);
        assert!(dec.blocks[..r as usize - 1].iter().all(|b| b == &vec![1]));
        for i in 1..r {
            // already in the smaller class
            assert!(block_decompose(&lam, r, i).is_err());
        }
    }
}
