use petgraph::unionfind::UnionFind;

use super::{FinCat, Obj};

/// Connected components, each sorted, ordered by least member.
pub fn connected_components(c: &FinCat) -> Vec<Vec<Obj>> {
    let n = c.num_objects();
    let mut uf = UnionFind::<usize>::new(n);
    for m in c.morphisms() {
        uf.union(m.src, m.tgt);
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Obj>> = Vec::new();
    for o in 0..n {
        let root = uf.find(o);
        if class_of[root] == usize::MAX {
            class_of[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[class_of[root]].push(o);
    }
    classes
}

/// Nonempty and a single zigzag class.
pub fn is_connected(c: &FinCat) -> bool {
    connected_components(c).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    #[test]
    fn components_of_small_categories() {
        assert_eq!(connected_components(&FinCat::discrete(&["a", "b"])), vec![vec![0], vec![1]]);
        assert_eq!(connected_components(&Poset::chain(1).as_category()), vec![vec![0, 1]]);
        assert!(connected_components(&FinCat::empty()).is_empty());
        assert!(!is_connected(&FinCat::empty()));
    }
}
