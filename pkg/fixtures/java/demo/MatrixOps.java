/** Dense row-major matrix kernels, int only. */
public class MatrixOps {

    /**
     * Classic triple loop product; dimensions are validated before any
     * allocation so failures cannot leak partial results.
     */
    static int[][] multiply(int[][] a, int[][] b) {
        int rows = a.length;
        int inner = b.length;
        int cols = b[0].length;
        if (a[0].length != inner) {
            throw new IllegalArgumentException("shape mismatch: " + a[0].length + " vs " + inner);
        }
        int[][] product = new int[rows][cols];
        for (int r = 0; r < rows; r++) {
            for (int c = 0; c < cols; c++) {
                int cell = 0;
                for (int k = 0; k < inner; k++) {
                    cell += a[r][k] * b[k][c];
                }
                product[r][c] = cell;
            }
        }
        return product;
    }

    static int[][] transpose(int[][] m) {
        int[][] flipped = new int[m[0].length][m.length];
        for (int r = 0; r < m.length; r++) {
            for (int c = 0; c < m[r].length; c++) {
                flipped[c][r] = m[r][c];
            }
        }
        return flipped;
    }

    static int trace(int[][] m) {
        int sum = 0;
        for (int i = 0; i < m.length; i++) {
            sum += m[i][i];
        }
        return sum;
    }
}
