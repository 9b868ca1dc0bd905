use steklov_core::Tree;

/// Decodes a Prüfer sequence over `0..n` (length `n − 2`) into its labeled tree.
pub fn prufer_tree(n: usize, seq: &[usize]) -> Tree {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::new(n, edges).expect("Prüfer decoding yields a tree")
}
